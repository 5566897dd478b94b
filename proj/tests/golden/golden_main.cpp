// Compares CLI output on the corpus with the golden files; `--update` rewrites them.
#include "golden.hpp"

#include <cstring>
#include <iostream>

int main(int argc, char** argv) {
	if (argc < 3) {
		std::cerr << "usage: soid_golden CORPUS GOLDEN [--update]\n";
		return 2;
	}
	const bool update = argc > 3 && std::strcmp(argv[3], "--update") == 0;
	auto r = soid::testing::check_golden(argv[1], argv[2], update);
	for (const auto& n : r.mismatches) {
		std::cout << "mismatch: " << n << "\n";
	}
	for (const auto& n : r.unstable) {
		std::cout << "unstable: " << n << "\n";
	}
	std::cout << r.cases << " cases, " << r.verbs.size() << " verbs, " << r.mismatches.size() << " mismatches, "
	          << r.unstable.size() << " unstable\n";
	return r.mismatches.empty() && r.unstable.empty() ? 0 : 1;
}
