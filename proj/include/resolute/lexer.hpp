#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "resolute/diagnostics.hpp"

namespace resolute {

enum class TokenKind { Ident, String, Int, Real, Punct, End };

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;  // identifier name, unescaped string body, number spelling or punctuator
    SourceLocation loc;

    bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
    bool is_punct(std::string_view t) const { return is(TokenKind::Punct, t); }
    bool is_ident(std::string_view t) const { return is(TokenKind::Ident, t); }
};

/// Tokenizer shared by the model and library languages. `--` starts a
/// comment running to end of line. The result always ends with an End token.
std::vector<Token> tokenize(std::string_view source, const std::string& file_name);

/// Cursor over a token vector with the small helpers both parsers use.
class TokenStream {
public:
    explicit TokenStream(std::vector<Token> tokens);

    const Token& peek(std::size_t ahead = 0) const;
    const Token& next();
    bool at_end() const { return peek().kind == TokenKind::End; }

    bool accept_punct(std::string_view p);
    bool accept_ident(std::string_view word);
    const Token& expect_punct(std::string_view p);
    const Token& expect_ident_word(std::string_view word);
    const Token& expect_kind(TokenKind kind, std::string_view what);

    [[noreturn]] void fail(const std::string& message) const;
    [[noreturn]] void fail_at(const Token& token, const std::string& message) const;

    std::size_t position() const { return pos_; }
    void rewind(std::size_t pos) { pos_ = pos; }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

std::string describe(const Token& token);

}  // namespace resolute
