#ifndef SOID_SRC_LEXER_HPP
#define SOID_SRC_LEXER_HPP

#include "soid/errors.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace soid::detail {

struct Token {
	enum class Kind : std::uint8_t { Ident, Int, Str, Punct, End };
	Kind kind = Kind::End;
	std::string text;
	int line = 1;
	int column = 1;
	bool unicode = false; //!< spelled with a Unicode symbol (quantifiers: type left to inference)

	bool is(std::string_view p) const { return kind == Kind::Punct && text == p; }
	bool is_ident(std::string_view s) const { return kind == Kind::Ident && text == s; }
};

/// Splits text into tokens. Unicode connectives are mapped to their ASCII
/// spelling; `//` and `%` start line comments.
std::vector<Token> tokenize(std::string_view text);

/// Cursor over a token vector with error helpers.
class TokenStream {
public:
	explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

	const Token& peek(std::size_t ahead = 0) const;
	const Token& next();
	bool at_end() const { return peek().kind == Token::Kind::End; }
	bool accept(std::string_view punct);
	bool accept_ident(std::string_view word);
	const Token& expect(std::string_view punct);
	std::string expect_ident(const char* what);
	[[noreturn]] void fail(const std::string& msg) const;
	[[noreturn]] void fail_at(const Token& t, const std::string& msg) const;
	std::size_t position() const { return pos_; }
	void reset(std::size_t pos) { pos_ = pos; }

private:
	std::vector<Token> tokens_;
	std::size_t pos_ = 0;
};

std::string describe(const Token& t);

} // namespace soid::detail

#endif
