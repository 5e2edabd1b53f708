/*
 * SPDX-License-Identifier: Apache-2.0
 */

#include <cstdlib>
#include <iostream>
#include <string>

#include "checks.hpp"

int main(int argc, char **argv)
{
	checks::Options o;
	std::vector<int> only;
	for (int i = 1; i < argc; ++i) {
		std::string a = argv[i];
		if (a == "-v")
			o.log = &std::cout;
		else
			only.push_back(std::atoi(a.c_str()));
	}
	return checks::run(o, std::cout, only) ? 1 : 0;
}
