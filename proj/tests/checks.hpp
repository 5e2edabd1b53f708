/*
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace checks {

struct Options {
	double effort = 1.0;      ///< scales trial counts (1 = full suite)
	bool fer = true;          ///< run the Monte Carlo criteria
	std::ostream *log = nullptr;
};

struct Result {
	int id = 0;
	std::string name;
	bool pass = false;
	std::string summary;
};

Result quantization_gap(const Options &o);
Result engine_equivalence(const Options &o);
Result bit_recovery(const Options &o);
Result memory_accounting(const Options &o);
Result double_package(const Options &o);
Result list_dominance(const Options &o);
Result kernels(const Options &o);
Result throughput_model(const Options &o);

struct Check {
	int id;
	bool monte_carlo;
	std::function<Result(const Options &)> run;
};
const std::vector<Check> &all();

/// Runs the selected checks and prints one line per check.
int run(const Options &o, std::ostream &out, const std::vector<int> &only = {});

} // namespace checks
