/** \file
 * CLI golden cases over the example corpus.
 */
#ifndef SOID_TESTS_GOLDEN_HPP
#define SOID_TESTS_GOLDEN_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace soid::testing {

struct GoldenCase {
	std::string name;
	std::vector<std::string> args; //!< paths relative to the corpus directory
};

const std::vector<GoldenCase>& golden_cases();

/// Command line, stdout, stderr and exit status of one in-process run, run from `corpus`.
std::string run_golden_case(const GoldenCase& c, const std::filesystem::path& corpus);

struct GoldenResult {
	std::size_t cases = 0;
	std::vector<std::string> mismatches; //!< case names differing from their golden file
	std::vector<std::string> unstable;   //!< case names whose two runs differ
	std::vector<std::string> verbs;      //!< distinct verbs covered
};

/// Runs every case twice and compares with `golden/<name>.out`; rewrites the files when `update`.
GoldenResult check_golden(const std::filesystem::path& corpus, const std::filesystem::path& golden, bool update);

} // namespace soid::testing

#endif
