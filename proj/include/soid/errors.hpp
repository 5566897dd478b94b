#ifndef SOID_ERRORS_HPP
#define SOID_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace soid {

/// An enumeration bound (see Limits) was hit. Signals resource exhaustion, not bad input.
class CapExceeded : public std::runtime_error {
public:
	explicit CapExceeded(const std::string& what) : std::runtime_error("cap exceeded: " + what) {}
};

/// Malformed input: syntax, unknown symbols, ill-typed values.
class InputError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
public:
	ParseError(const std::string& msg, int line, int column)
		: InputError(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line), column_(column) {}
	int line() const { return line_; }
	int column() const { return column_; }
private:
	int line_;
	int column_;
};

/// A let-definition whose well-founded model is not exact in an exact context.
class NonTotalDefinition : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

} // namespace soid

#endif
