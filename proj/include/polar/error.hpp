/*
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <stdexcept>
#include <string>

namespace polar {

/// Raised when a caller passes a value outside an operation's domain.
class InvalidParameter : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

/// Internal precondition broken by the caller's sequencing (not by data).
class ContractViolation : public std::logic_error {
public:
	using std::logic_error::logic_error;
};

/// compare_curves: a curve never crosses the requested FER level.
class NotBracketed : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// Config file problems; carries the offending section and key.
class ConfigError : public std::runtime_error {
public:
	ConfigError(std::string section, std::string key, const std::string &what)
		: std::runtime_error("[" + section + "] " + key + ": " + what),
		  section_(std::move(section)), key_(std::move(key)) {}
	const std::string &section() const { return section_; }
	const std::string &key() const { return key_; }

private:
	std::string section_;
	std::string key_;
};

} // namespace polar
