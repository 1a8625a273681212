#pragma once

// Shared tokenizer for the .bn and .ts readers.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace stpnet::detail {

enum class Tok {
    Ident, Number, Not, And, Or, Xor, Iff, Implies, LParen, RParen, LBracket, RBracket,
    Comma, Equals, Prime, Semicolon, Newline, End
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

/// One statement: a physical line, extended across following lines while a
/// '[' is still open. Comments are already removed.
struct Statement {
    std::string text;
    std::size_t line;
    std::vector<std::size_t> lineStarts;  // offset in `text` where each physical line begins
};

std::vector<Statement> split_statements(std::string_view source);
std::vector<Token> tokenize(const Statement& statement);
const char* describe(Tok kind);

} // namespace stpnet::detail
