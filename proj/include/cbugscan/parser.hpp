#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cbugscan/ast.hpp"

namespace cbugscan {

enum class TokenKind { Identifier, Keyword, IntLiteral, StringLiteral, Punct, MetaVar, End };

struct Token {
  TokenKind kind;
  std::string text;
  SourceLocation location;
  /// Byte offset of the token in the lexed text.
  std::size_t offset = 0;
};

struct LexOptions {
  /// Accept `%NAME` metavariable tokens (pattern sources only).
  bool metavariables = false;
};

/// Tokenizes mini-C. Comments are dropped; preprocessor directives are
/// skipped except `# N "file"` line markers, which re-anchor locations.
std::vector<Token> tokenize(std::string_view text, const std::string &file,
                            LexOptions options = {});

/// Parses a whole translation unit into a TranslationUnitRoot.
AstPtr parseTranslationUnit(std::string_view text, const std::string &file);

/// Parses a single expression or statement that may contain metavariables.
AstPtr parsePatternTemplate(std::string_view text);

} // namespace cbugscan
