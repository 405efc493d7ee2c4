#include <array>
#include <cctype>
#include <string_view>

#include "cbugscan/error.hpp"
#include "cbugscan/parser.hpp"

namespace cbugscan {

namespace {

constexpr std::array<std::string_view, 31> kKeywords = {
    "void",   "char",   "short",  "int",      "long",    "signed", "unsigned",
    "float",  "double", "struct", "union",    "enum",    "static", "const",
    "extern", "volatile", "inline", "register", "if",    "else",   "while",
    "for",    "do",     "return", "goto",     "break",   "continue",
    "switch", "case",   "default", "sizeof"};

// Longest first so maximal munch works by linear scan.
constexpr std::array<std::string_view, 46> kPuncts = {
    "...", "<<=", ">>=", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
    "&&",  "||",  "+=",  "-=", "*=", "/=", "%=", "&=", "|=", "^=", "{",  "}",
    "(",   ")",   "[",   "]",  ";",  ",",  ".",  ":",  "=",  "<",  ">",  "+",
    "-",   "*",   "/",   "%",  "&",  "|",  "^",  "!",  "~",  "?"};

bool isKeyword(std::string_view word) {
  for (auto k : kKeywords)
    if (k == word)
      return true;
  return false;
}

bool identStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool identChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
public:
  Lexer(std::string_view text, std::string file, LexOptions options)
      : text_(text), file_(std::move(file)), options_(options) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    bool lineStart = true;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        advance();
        lineStart = true;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      if (c == '#' && lineStart) {
        directive();
        continue;
      }
      lineStart = false;
      if (c == '/' && peek(1) == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n')
          advance();
        continue;
      }
      if (c == '/' && peek(1) == '*') {
        blockComment();
        continue;
      }
      out.push_back(token());
    }
    out.push_back(Token{TokenKind::End, "", here(), pos_});
    return out;
  }

private:
  char peek(std::size_t ahead) const {
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

  SourceLocation here() const { return SourceLocation{file_, line_, column_}; }

  void blockComment() {
    SourceLocation start = here();
    advance();
    advance();
    while (pos_ < text_.size() && !(text_[pos_] == '*' && peek(1) == '/'))
      advance();
    if (pos_ >= text_.size())
      throw SyntaxError(start, "unterminated comment");
    advance();
    advance();
  }

  // `# 12 "file.c"` and `#line 12 "file.c"` re-anchor locations; every
  // other directive is skipped up to the end of its (continued) line.
  void directive() {
    std::size_t end = pos_;
    std::string line;
    while (end < text_.size() && text_[end] != '\n') {
      if (text_[end] == '\\' && end + 1 < text_.size() && text_[end + 1] == '\n') {
        end += 2;
        line += ' ';
        continue;
      }
      line += text_[end++];
    }
    while (pos_ < end)
      advance();

    std::size_t i = 1;
    auto skipSpace = [&] {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
        ++i;
    };
    skipSpace();
    if (line.compare(i, 4, "line") == 0) {
      i += 4;
      skipSpace();
    }
    if (i >= line.size() || !std::isdigit(static_cast<unsigned char>(line[i])))
      return;
    int number = 0;
    while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i])))
      number = number * 10 + (line[i++] - '0');
    skipSpace();
    if (i < line.size() && line[i] == '"') {
      auto close = line.find('"', i + 1);
      if (close != std::string::npos)
        file_ = line.substr(i + 1, close - i - 1);
    }
    // the newline ending the directive bumps line_ once more
    line_ = number - 1;
  }

  Token token() {
    SourceLocation loc = here();
    std::size_t start = pos_;
    char c = text_[pos_];

    if (identStart(c)) {
      while (pos_ < text_.size() && identChar(text_[pos_]))
        advance();
      std::string word(text_.substr(start, pos_ - start));
      auto kind = isKeyword(word) ? TokenKind::Keyword : TokenKind::Identifier;
      return Token{kind, std::move(word), loc, start};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
        advance();
      return Token{TokenKind::IntLiteral, std::string(text_.substr(start, pos_ - start)),
                   loc, start};
    }
    if (c == '"' || c == '\'') {
      advance();
      while (pos_ < text_.size() && text_[pos_] != c) {
        if (text_[pos_] == '\n')
          throw SyntaxError(loc, "unterminated literal");
        if (text_[pos_] == '\\')
          advance();
        if (pos_ < text_.size())
          advance();
      }
      if (pos_ >= text_.size())
        throw SyntaxError(loc, "unterminated literal");
      advance();
      // character constants are integers
      auto kind = c == '"' ? TokenKind::StringLiteral : TokenKind::IntLiteral;
      return Token{kind, std::string(text_.substr(start, pos_ - start)), loc, start};
    }
    if (c == '%' && options_.metavariables) {
      advance();
      if (pos_ >= text_.size() || !identStart(text_[pos_]))
        throw SyntaxError(loc, "'%' must be followed by a metavariable name");
      std::size_t nameStart = pos_;
      while (pos_ < text_.size() && identChar(text_[pos_]))
        advance();
      return Token{TokenKind::MetaVar,
                   std::string(text_.substr(nameStart, pos_ - nameStart)), loc, start};
    }
    for (auto p : kPuncts) {
      if (text_.substr(pos_, p.size()) == p) {
        for (std::size_t k = 0; k < p.size(); ++k)
          advance();
        return Token{TokenKind::Punct, std::string(p), loc, start};
      }
    }
    throw SyntaxError(loc, std::string("illegal character '") + c + "'");
  }

  std::string_view text_;
  std::string file_;
  LexOptions options_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

} // namespace

std::vector<Token> tokenize(std::string_view text, const std::string &file,
                            LexOptions options) {
  return Lexer(text, file, options).run();
}

} // namespace cbugscan
