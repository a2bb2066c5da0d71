// Copyright 2026 The tmlang Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TM_SRC_LEXER_HPP
#define TM_SRC_LEXER_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tm/parse.hpp"

namespace tmlang::detail {

enum class Tok {
  Ident,
  Int,
  String,
  LBrace,
  RBrace,
  Semi,
  Comma,
  Dot,
  Colon,
  Arrow,
  End,
};

std::string_view describe(Tok tok);

struct Token {
  Tok kind = Tok::End;
  std::string text;  // identifier/number text, or decoded string contents
  int line = 1;
  int column = 1;
  int length = 0;
};

struct LexResult {
  std::vector<Token> tokens;  // always ends with Tok::End
  std::optional<ParseError> error;
};

/// Keywords are contextual, so every word comes out as Tok::Ident.
LexResult lex(std::string_view text, std::string_view file);

}  // namespace tmlang::detail

#endif  // TM_SRC_LEXER_HPP
