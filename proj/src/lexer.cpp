#include "lexer.hpp"

#include <array>
#include <cctype>
#include <utility>

namespace soid::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\''; }

constexpr std::array<std::pair<std::string_view, std::string_view>, 22> kUnicode{{
	{"←", "<-"},  // leftwards arrow
	{"∧", "&"},   // logical and
	{"∨", "|"},   // logical or
	{"¬", "~"},   // not sign
	{"⇒", "=>"},  // rightwards double arrow
	{"⇔", "<=>"}, // left right double arrow
	{"↔", "<=>"},
	{"→", "->"},
	{"∀", "!"},
	{"∃", "?"},
	{"≤", "=<"},
	{"≥", ">="},
	{"≠", "~="},
	{"δ", "δ"}, // delta: the domain type
	{"\U0001d539", "\U0001d539"}, // double-struck B: the boolean type
	{"²", "²"},
	{"³", "³"},
	{"⁴", "⁴"},
	{"₁", "_1"},
	{"₂", "_2"},
	{"−", "-"},
	{"⊤", "true"},
}};

constexpr std::array<std::string_view, 13> kPunct3{{"<=>", "<-", "=>", "=<", ">=", "~=", "!=", "..", "!!", "??", "->", ":-", "=="}};

} // namespace

std::vector<Token> tokenize(std::string_view text) {
	std::vector<Token> out;
	int line = 1;
	int col = 1;
	std::size_t i = 0;
	auto advance = [&](std::size_t n) {
		for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
			if (text[i] == '\n') {
				++line;
				col = 1;
			} else if ((static_cast<unsigned char>(text[i]) & 0xC0U) != 0x80U) {
				++col;
			}
		}
	};
	while (i < text.size()) {
		char c = text[i];
		if (std::isspace(static_cast<unsigned char>(c)) != 0) {
			advance(1);
			continue;
		}
		if (c == '%' || (c == '/' && i + 1 < text.size() && text[i + 1] == '/')) {
			while (i < text.size() && text[i] != '\n') {
				advance(1);
			}
			continue;
		}
		Token t;
		t.line = line;
		t.column = col;
		if (ident_start(c)) {
			std::size_t j = i;
			while (j < text.size() && ident_char(text[j])) {
				++j;
			}
			t.kind = Token::Kind::Ident;
			t.text = std::string(text.substr(i, j - i));
			advance(j - i);
			out.push_back(std::move(t));
			continue;
		}
		if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
			std::size_t j = i;
			while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])) != 0) {
				++j;
			}
			t.kind = Token::Kind::Int;
			t.text = std::string(text.substr(i, j - i));
			advance(j - i);
			out.push_back(std::move(t));
			continue;
		}
		if (c == '"') {
			std::size_t j = i + 1;
			while (j < text.size() && text[j] != '"' && text[j] != '\n') {
				++j;
			}
			if (j >= text.size() || text[j] != '"') {
				throw ParseError("unterminated string", line, col);
			}
			t.kind = Token::Kind::Str;
			t.text = std::string(text.substr(i + 1, j - i - 1));
			advance(j + 1 - i);
			out.push_back(std::move(t));
			continue;
		}
		bool matched = false;
		for (auto [u, ascii] : kUnicode) {
			if (text.substr(i, u.size()) == u) {
				t.kind = Token::Kind::Punct;
				t.text = std::string(ascii);
				t.unicode = true;
				advance(u.size());
				if (ascii == "true") {
					t.kind = Token::Kind::Ident;
				}
				if ((ascii == "!" || ascii == "?") && text.substr(i, 3) == "_SO") {
					t.text += t.text;
					advance(3);
				} else if ((ascii == "!" || ascii == "?") && text.substr(i, 3) == "_FO") {
					t.unicode = false;
					advance(3);
				}
				out.push_back(std::move(t));
				matched = true;
				break;
			}
		}
		if (matched) {
			continue;
		}
		for (std::string_view p : kPunct3) {
			if (text.substr(i, p.size()) == p) {
				t.kind = Token::Kind::Punct;
				t.text = std::string(p);
				if (p == "!=") {
					t.text = "~=";
				} else if (p == ":-") {
					t.text = "<-";
				} else if (p == "==") {
					t.text = "=";
				}
				advance(p.size());
				out.push_back(std::move(t));
				matched = true;
				break;
			}
		}
		if (matched) {
			continue;
		}
		static constexpr std::string_view kSingle = "(){}[],.:;=<>~&|!?#*+-/^";
		if (kSingle.find(c) != std::string_view::npos) {
			t.kind = Token::Kind::Punct;
			t.text = std::string(1, c);
			advance(1);
			out.push_back(std::move(t));
			continue;
		}
		throw ParseError("unexpected character '" + std::string(1, c) + "'", line, col);
	}
	Token end;
	end.line = line;
	end.column = col;
	out.push_back(end);
	return out;
}

std::string describe(const Token& t) {
	switch (t.kind) {
	case Token::Kind::End: return "end of input";
	case Token::Kind::Str: return "string \"" + t.text + "\"";
	default: return "'" + t.text + "'";
	}
}

const Token& TokenStream::peek(std::size_t ahead) const {
	std::size_t k = pos_ + ahead;
	return k < tokens_.size() ? tokens_[k] : tokens_.back();
}

const Token& TokenStream::next() {
	const Token& t = peek();
	if (pos_ < tokens_.size() - 1) {
		++pos_;
	}
	return t;
}

bool TokenStream::accept(std::string_view punct) {
	if (peek().is(punct)) {
		next();
		return true;
	}
	return false;
}

bool TokenStream::accept_ident(std::string_view word) {
	if (peek().is_ident(word)) {
		next();
		return true;
	}
	return false;
}

const Token& TokenStream::expect(std::string_view punct) {
	if (!peek().is(punct)) {
		fail("expected '" + std::string(punct) + "' but found " + describe(peek()));
	}
	return next();
}

std::string TokenStream::expect_ident(const char* what) {
	if (peek().kind != Token::Kind::Ident) {
		fail(std::string("expected ") + what + " but found " + describe(peek()));
	}
	return next().text;
}

void TokenStream::fail(const std::string& msg) const { fail_at(peek(), msg); }

void TokenStream::fail_at(const Token& t, const std::string& msg) const { throw ParseError(msg, t.line, t.column); }

} // namespace soid::detail
