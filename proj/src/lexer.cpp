// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

#include "lexer.hpp"

#include <cctype>

namespace tmlang::detail {

std::string_view describe(Tok tok) {
  switch (tok) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::String: return "string";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Colon: return "':'";
    case Tok::Arrow: return "'->'";
    case Tok::End: return "end of input";
  }
  return "?";
}

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0 && static_cast<unsigned char>(c) < 0x80;
}

bool is_ident_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return u < 0x80 && (std::isalnum(u) != 0 || c == '_');
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  Lexer(std::string_view text, std::string_view file) : text_(text), file_(file) {}

  LexResult run() {
    LexResult result;
    while (true) {
      skip_trivia();
      if (pos_ >= text_.size()) break;
      auto tok = next();
      if (!tok) {
        result.error = error_;
        break;
      }
      result.tokens.push_back(std::move(*tok));
    }
    result.tokens.push_back(end_token());
    return result;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      char c = peek();
      if (c == '#') {
        while (pos_ < text_.size() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  std::optional<Token> fail(int line, int column, int length, std::string message) {
    error_ = ParseError{SourceSpan{file_, line, column, length}, std::move(message), {}};
    return std::nullopt;
  }

  std::optional<Token> next() {
    Token tok;
    tok.line = line_;
    tok.column = column_;
    std::size_t start = pos_;
    char c = peek();

    auto single = [&](Tok kind) {
      advance();
      tok.kind = kind;
      tok.text = std::string(1, c);
      tok.length = 1;
      return tok;
    };

    switch (c) {
      case '{': return single(Tok::LBrace);
      case '}': return single(Tok::RBrace);
      case ';': return single(Tok::Semi);
      case ',': return single(Tok::Comma);
      case '.': return single(Tok::Dot);
      case ':': return single(Tok::Colon);
      default: break;
    }

    if (c == '-' && peek(1) == '>') {
      advance();
      advance();
      tok.kind = Tok::Arrow;
      tok.text = "->";
      tok.length = 2;
      return tok;
    }

    if (is_digit(c) || (c == '-' && is_digit(peek(1)))) {
      advance();
      while (is_digit(peek())) advance();
      tok.kind = Tok::Int;
      tok.text = std::string(text_.substr(start, pos_ - start));
      tok.length = static_cast<int>(pos_ - start);
      return tok;
    }

    if (is_ident_start(c)) {
      while (is_ident_char(peek())) advance();
      tok.kind = Tok::Ident;
      tok.text = std::string(text_.substr(start, pos_ - start));
      tok.length = static_cast<int>(pos_ - start);
      return tok;
    }

    if (c == '"') {
      advance();
      std::string value;
      while (true) {
        if (pos_ >= text_.size() || peek() == '\n') {
          return fail(tok.line, tok.column, static_cast<int>(pos_ - start), "unterminated string");
        }
        char s = peek();
        if (s == '"') {
          advance();
          break;
        }
        if (s == '\\') {
          int esc_line = line_, esc_col = column_;
          advance();
          char e = peek();
          if (e == '"' || e == '\\') {
            value += e;
          } else if (e == 'n') {
            value += '\n';
          } else if (e == 't') {
            value += '\t';
          } else {
            return fail(esc_line, esc_col, 2, "unknown escape sequence in string");
          }
          advance();
          continue;
        }
        value += s;
        advance();
      }
      tok.kind = Tok::String;
      tok.text = std::move(value);
      tok.length = static_cast<int>(pos_ - start);
      return tok;
    }

    return fail(line_, column_, 1, std::string("unexpected character '") + c + "'");
  }

  // Points at the last character of the input so the span stays inside it.
  Token end_token() const {
    Token tok;
    tok.kind = Tok::End;
    if (text_.empty()) return tok;
    int line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    tok.line = line;
    tok.column = column;
    return tok;
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  ParseError error_;
};

}  // namespace

LexResult lex(std::string_view text, std::string_view file) {
  return Lexer(text, file).run();
}

}  // namespace tmlang::detail
