#ifndef SOID_LIMITS_HPP
#define SOID_LIMITS_HPP

#include <cstdint>

namespace soid {

/// Enumeration bounds. Exceeding any of them raises CapExceeded.
struct Limits {
	std::uint64_t max_completions = std::uint64_t{1} << 20; //!< leaves of one completion enumeration
	unsigned max_unknown_aggregate = 20;                    //!< u-members of a brute-force ultimate approximation
	unsigned max_partial_stable_atoms = 12;                 //!< defined atoms for the 3^n partial stable search
	unsigned max_subset_atoms = 16;                         //!< atoms for subset searches (prudence, braveness)
	unsigned max_stable_atoms = 20;                         //!< defined atoms for the 2^n stable search
	unsigned max_relation_cells = 9;                        //!< |D|^n of a relation used as an argument or SO variable
	std::uint64_t max_table_cells = std::uint64_t{1} << 22; //!< cells of one predicate table
	unsigned max_mx_atoms = 20;                             //!< open atoms in model expansion
};

} // namespace soid

#endif
