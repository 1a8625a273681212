#include "netdsl_lex.hpp"

#include <cctype>

#include "stpnet/errors.hpp"

namespace stpnet::detail {

namespace {

std::string strip_comment(std::string_view line) {
    auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    return std::string(line);
}

bool blank(const std::string& s) {
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace

std::vector<Statement> split_statements(std::string_view source) {
    std::vector<Statement> out;
    Statement current;
    int depth = 0;
    std::size_t lineNo = 0;
    std::size_t pos = 0;
    while (pos <= source.size()) {
        auto eol = source.find('\n', pos);
        if (eol == std::string_view::npos) eol = source.size();
        std::string line = strip_comment(source.substr(pos, eol - pos));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ++lineNo;
        pos = eol + 1;

        if (depth == 0) {
            if (blank(line)) continue;
            current = Statement{line, lineNo, {0}};
        } else {
            current.text += '\n';
            current.lineStarts.push_back(current.text.size());
            current.text += line;
        }
        for (char c : line) {
            if (c == '[') ++depth;
            if (c == ']') --depth;
        }
        if (depth < 0) throw ParseError("unbalanced ']'", current.line, 1);
        if (depth == 0) out.push_back(std::move(current));
    }
    if (depth > 0) throw ParseError("unterminated '['", current.line, 1);
    return out;
}

std::vector<Token> tokenize(const Statement& st) {
    std::vector<Token> out;
    const std::string& s = st.text;
    std::size_t physical = 0;
    auto where = [&](std::size_t offset, std::size_t& line, std::size_t& col) {
        while (physical + 1 < st.lineStarts.size() && st.lineStarts[physical + 1] <= offset) ++physical;
        line = st.line + physical;
        col = offset - st.lineStarts[physical] + 1;
    };
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        std::size_t line = 0, col = 0;
        where(i, line, col);
        if (c == '\n') {
            out.push_back({Tok::Newline, "\\n", line, col});
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Tok::Ident, s.substr(i, j - i), line, col});
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Number, s.substr(i, j - i), line, col});
            i = j;
            continue;
        }
        if (s.compare(i, 3, "<->") == 0) {
            out.push_back({Tok::Iff, "<->", line, col});
            i += 3;
            continue;
        }
        if (s.compare(i, 2, "->") == 0) {
            out.push_back({Tok::Implies, "->", line, col});
            i += 2;
            continue;
        }
        Tok kind;
        switch (c) {
        case '!': kind = Tok::Not; break;
        case '&': kind = Tok::And; break;
        case '|': kind = Tok::Or; break;
        case '^': kind = Tok::Xor; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '[': kind = Tok::LBracket; break;
        case ']': kind = Tok::RBracket; break;
        case ',': kind = Tok::Comma; break;
        case '=': kind = Tok::Equals; break;
        case '\'': kind = Tok::Prime; break;
        case ';': kind = Tok::Semicolon; break;
        default: throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
        out.push_back({kind, std::string(1, c), line, col});
        ++i;
    }
    std::size_t line = 0, col = 0;
    where(s.size(), line, col);
    out.push_back({Tok::End, "end of line", line, col});
    return out;
}

const char* describe(Tok kind) {
    switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::Not: return "'!'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Xor: return "'^'";
    case Tok::Iff: return "'<->'";
    case Tok::Implies: return "'->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Equals: return "'='";
    case Tok::Prime: return "'''";
    case Tok::Semicolon: return "';'";
    case Tok::Newline: return "line break";
    case Tok::End: return "end of line";
    }
    return "token";
}

} // namespace stpnet::detail
