#include <set>

#include "cbugscan/error.hpp"
#include "cbugscan/parser.hpp"

namespace cbugscan {

namespace {

const std::set<std::string, std::less<>> kTypeWords = {
    "void", "char",  "short",  "int",    "long",     "signed",   "unsigned",
    "float", "double", "struct", "static", "const",  "extern",   "volatile",
    "inline", "register"};

const std::set<std::string, std::less<>> kUnsupported = {
    "union", "enum", "do", "switch", "case", "default", "sizeof"};

int binaryPrec(const Token &t) {
  if (t.kind != TokenKind::Punct)
    return -1;
  const std::string &op = t.text;
  if (op == "||") return 2;
  if (op == "&&") return 3;
  if (op == "|") return 4;
  if (op == "^") return 5;
  if (op == "&") return 6;
  if (op == "==" || op == "!=") return 7;
  if (op == "<" || op == ">" || op == "<=" || op == ">=") return 8;
  if (op == "<<" || op == ">>") return 9;
  if (op == "+" || op == "-") return 10;
  if (op == "*" || op == "/" || op == "%") return 11;
  return -1;
}

bool isAssignOp(const Token &t) {
  if (t.kind != TokenKind::Punct)
    return false;
  static const std::set<std::string, std::less<>> ops = {
      "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>="};
  return ops.count(t.text) != 0;
}

class Parser {
public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  AstPtr translationUnit(const std::string &file) {
    auto root = makeNode(AstKind::TranslationUnitRoot, "", SourceLocation{file, 1, 1});
    while (!at(TokenKind::End))
      externalDeclaration(root->children);
    return root;
  }

  AstPtr pattern() {
    AstPtr result;
    if (startsStatement()) {
      std::vector<AstPtr> items;
      blockItem(items);
      if (items.size() != 1)
        fail("pattern must be a single statement");
      result = std::move(items.front());
    } else {
      result = expression();
      if (isPunct(";")) {
        auto loc = result->location;
        next();
        std::vector<AstPtr> kids;
        kids.push_back(std::move(result));
        result = makeNode(AstKind::ExprStatement, "", loc, std::move(kids));
      }
    }
    if (!at(TokenKind::End))
      fail("unexpected '" + cur().text + "' after pattern");
    return result;
  }

private:
  // ---- token helpers -------------------------------------------------------

  const Token &cur() const { return toks_[pos_]; }
  const Token &lookahead(std::size_t n) const {
    return toks_[std::min(pos_ + n, toks_.size() - 1)];
  }
  bool at(TokenKind k) const { return cur().kind == k; }
  bool isPunct(std::string_view p) const {
    return cur().kind == TokenKind::Punct && cur().text == p;
  }
  bool isKeyword(std::string_view k) const {
    return cur().kind == TokenKind::Keyword && cur().text == k;
  }
  const Token &next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string &msg) const {
    throw SyntaxError(cur().location, "syntax error: " + msg);
  }

  const Token &expectPunct(std::string_view p) {
    if (!isPunct(p)) {
      std::string found = at(TokenKind::End) ? "end of input" : "'" + cur().text + "'";
      fail("expected '" + std::string(p) + "' before " + found);
    }
    return next();
  }

  std::string expectIdentifier(const char *what) {
    if (!at(TokenKind::Identifier))
      fail(std::string("expected ") + what);
    return next().text;
  }

  void rejectUnsupported() const {
    if (cur().kind == TokenKind::Keyword && kUnsupported.count(cur().text))
      fail("'" + cur().text + "' is not supported");
  }

  bool startsType() const {
    return cur().kind == TokenKind::Keyword && kTypeWords.count(cur().text);
  }

  bool startsStatement() const {
    if (cur().kind == TokenKind::Keyword)
      return true;
    if (isPunct("{") || isPunct(";"))
      return true;
    return at(TokenKind::Identifier) && lookahead(1).kind == TokenKind::Punct &&
           lookahead(1).text == ":";
  }

  // ---- declarations --------------------------------------------------------

  struct DeclSpec {
    std::string base;
    SourceLocation location;
  };

  // Parses qualifiers and a base type. A `struct T { ... }` body is parsed
  // into `structDef` when requested.
  DeclSpec declSpec(AstPtr *structDef) {
    DeclSpec spec{"", cur().location};
    std::vector<std::string> words;
    while (startsType()) {
      const std::string word = next().text;
      if (word == "static" || word == "const" || word == "extern" ||
          word == "volatile" || word == "inline" || word == "register")
        continue;
      if (word == "struct") {
        auto tagLoc = cur().location;
        std::string tag = expectIdentifier("struct tag");
        words.push_back("struct " + tag);
        if (isPunct("{")) {
          if (!structDef)
            fail("struct definitions are only allowed at file scope");
          *structDef = structBody(tag, tagLoc);
        }
        continue;
      }
      words.push_back(word);
    }
    if (words.empty())
      fail("expected a type");
    for (std::size_t i = 0; i < words.size(); ++i)
      spec.base += (i ? " " : "") + words[i];
    return spec;
  }

  AstPtr structBody(const std::string &tag, SourceLocation loc) {
    auto node = makeNode(AstKind::StructDecl, tag, std::move(loc));
    expectPunct("{");
    while (!isPunct("}")) {
      if (at(TokenKind::End))
        fail("unterminated struct definition");
      auto spec = declSpec(nullptr);
      do {
        auto field = declarator(spec, AstKind::VarDecl);
        node->children.push_back(std::move(field));
      } while (isPunct(",") && (next(), true));
      expectPunct(";");
    }
    expectPunct("}");
    return node;
  }

  // `*`* name (`[` size `]`)*
  AstPtr declarator(const DeclSpec &spec, AstKind kind, bool nameOptional = false) {
    std::string type = spec.base + " ";
    while (isPunct("*")) {
      next();
      type += "*";
      while (isKeyword("const") || isKeyword("volatile"))
        next();
    }
    auto loc = cur().location;
    std::string name;
    if (at(TokenKind::Identifier))
      name = next().text;
    else if (!nameOptional)
      fail("expected declarator name");
    if (type.back() == ' ')
      type.pop_back();
    std::string dims;
    while (isPunct("[")) {
      next();
      if (!at(TokenKind::IntLiteral))
        fail("array size must be an integer constant");
      dims += "[" + next().text + "]";
      expectPunct("]");
    }
    if (!dims.empty())
      type += " " + dims;
    auto node = makeNode(kind, name, name.empty() ? spec.location : loc);
    node->type = std::move(type);
    return node;
  }

  void externalDeclaration(std::vector<AstPtr> &out) {
    rejectUnsupported();
    if (!startsType())
      fail("expected a declaration");
    AstPtr structDef;
    auto spec = declSpec(&structDef);
    if (structDef) {
      out.push_back(std::move(structDef));
      if (isPunct(";")) {
        next();
        return;
      }
    }
    auto first = declarator(spec, AstKind::VarDecl);
    first->location = spec.location;
    if (isPunct("(")) {
      out.push_back(functionDefinition(spec, std::move(first)));
      return;
    }
    out.push_back(finishVarDecl(std::move(first)));
    while (isPunct(",")) {
      next();
      auto d = declarator(spec, AstKind::VarDecl);
      d->location = spec.location;
      out.push_back(finishVarDecl(std::move(d)));
    }
    expectPunct(";");
  }

  AstPtr finishVarDecl(AstPtr decl) {
    if (isPunct("=")) {
      next();
      if (isPunct("{"))
        fail("aggregate initializers are not supported");
      decl->children.push_back(assignment());
    }
    return decl;
  }

  AstPtr functionDefinition(const DeclSpec &spec, AstPtr head) {
    auto fn = makeNode(AstKind::FunctionDef, head->text, spec.location);
    fn->type = head->type;
    expectPunct("(");
    if (isKeyword("void") && lookahead(1).kind == TokenKind::Punct &&
        lookahead(1).text == ")") {
      next();
    } else if (!isPunct(")")) {
      do {
        if (isPunct("..."))
          fail("variadic functions are not supported");
        auto pspec = declSpec(nullptr);
        auto param = declarator(pspec, AstKind::ParamDecl, true);
        param->location = pspec.location;
        fn->children.push_back(std::move(param));
      } while (isPunct(",") && (next(), true));
    }
    expectPunct(")");
    if (isPunct(";"))
      fail("function prototypes are not supported");
    if (!isPunct("{"))
      fail("expected function body");
    fn->children.push_back(block());
    return fn;
  }

  // ---- statements ----------------------------------------------------------

  AstPtr block() {
    auto node = makeNode(AstKind::Block, "", cur().location);
    expectPunct("{");
    while (!isPunct("}")) {
      if (at(TokenKind::End))
        fail("expected '}' before end of input");
      blockItem(node->children);
    }
    node->endLocation = cur().location;
    next();
    return node;
  }

  void blockItem(std::vector<AstPtr> &out) {
    if (startsType()) {
      auto spec = declSpec(nullptr);
      do {
        auto d = declarator(spec, AstKind::VarDecl);
        d->location = spec.location;
        out.push_back(finishVarDecl(std::move(d)));
      } while (isPunct(",") && (next(), true));
      expectPunct(";");
      return;
    }
    out.push_back(statement());
  }

  AstPtr single(AstKind kind, std::vector<AstPtr> kids = {}, std::string text = "") {
    auto loc = cur().location;
    next();
    return makeNode(kind, std::move(text), loc, std::move(kids));
  }

  AstPtr statement() {
    rejectUnsupported();
    const auto loc = cur().location;
    if (isPunct("{"))
      return block();
    if (isPunct(";"))
      return single(AstKind::EmptyStatement);
    if (startsType())
      fail("declaration is not allowed here");
    if (isKeyword("if")) {
      next();
      expectPunct("(");
      auto node = makeNode(AstKind::If, "", loc);
      node->children.push_back(expression());
      expectPunct(")");
      node->children.push_back(statement());
      if (isKeyword("else")) {
        next();
        node->children.push_back(statement());
      }
      return node;
    }
    if (isKeyword("while")) {
      next();
      expectPunct("(");
      auto node = makeNode(AstKind::While, "", loc);
      node->children.push_back(expression());
      expectPunct(")");
      node->children.push_back(statement());
      return node;
    }
    if (isKeyword("for"))
      return forStatement();
    if (isKeyword("return")) {
      next();
      auto node = makeNode(AstKind::Return, "", loc);
      if (!isPunct(";"))
        node->children.push_back(expression());
      expectPunct(";");
      return node;
    }
    if (isKeyword("goto")) {
      next();
      auto node = makeNode(AstKind::Goto, expectIdentifier("label name"), loc);
      expectPunct(";");
      return node;
    }
    if (isKeyword("break") || isKeyword("continue")) {
      auto kind = isKeyword("break") ? AstKind::Break : AstKind::Continue;
      next();
      expectPunct(";");
      return makeNode(kind, "", loc);
    }
    if (at(TokenKind::Keyword) && !isKeyword("else"))
      fail("unexpected keyword '" + cur().text + "'");
    if (at(TokenKind::Identifier) && lookahead(1).kind == TokenKind::Punct &&
        lookahead(1).text == ":") {
      auto node = makeNode(AstKind::Label, next().text, loc);
      next();
      if (isPunct("}"))
        fail("label at end of compound statement");
      node->children.push_back(statement());
      return node;
    }
    auto e = expression();
    expectPunct(";");
    std::vector<AstPtr> kids;
    auto eloc = e->location;
    kids.push_back(std::move(e));
    return makeNode(AstKind::ExprStatement, "", eloc, std::move(kids));
  }

  AstPtr forStatement() {
    auto node = makeNode(AstKind::For, "", cur().location);
    next();
    expectPunct("(");
    if (isPunct(";")) {
      node->children.push_back(single(AstKind::EmptyStatement));
    } else if (startsType()) {
      auto spec = declSpec(nullptr);
      auto d = declarator(spec, AstKind::VarDecl);
      d->location = spec.location;
      node->children.push_back(finishVarDecl(std::move(d)));
      expectPunct(";");
    } else {
      auto e = expression();
      auto loc = e->location;
      std::vector<AstPtr> kids;
      kids.push_back(std::move(e));
      node->children.push_back(makeNode(AstKind::ExprStatement, "", loc, std::move(kids)));
      expectPunct(";");
    }
    if (isPunct(";"))
      node->children.push_back(single(AstKind::EmptyStatement));
    else {
      node->children.push_back(expression());
      expectPunct(";");
    }
    if (isPunct(")")) {
      node->children.push_back(makeNode(AstKind::EmptyStatement, "", cur().location));
    } else {
      auto e = expression();
      auto loc = e->location;
      std::vector<AstPtr> kids;
      kids.push_back(std::move(e));
      node->children.push_back(makeNode(AstKind::ExprStatement, "", loc, std::move(kids)));
    }
    expectPunct(")");
    node->children.push_back(statement());
    return node;
  }

  // ---- expressions ---------------------------------------------------------

  AstPtr expression() {
    auto e = assignment();
    if (isPunct(","))
      fail("comma expressions are not supported");
    return e;
  }

  AstPtr assignment() {
    auto lhs = binary(2);
    if (isPunct("?"))
      fail("conditional expressions are not supported");
    if (isAssignOp(cur())) {
      std::string op = next().text;
      auto loc = lhs->location;
      std::vector<AstPtr> kids;
      kids.push_back(std::move(lhs));
      kids.push_back(assignment());
      return makeNode(AstKind::Assign, op, loc, std::move(kids));
    }
    return lhs;
  }

  AstPtr binary(int minPrec) {
    auto lhs = unary();
    for (;;) {
      int prec = binaryPrec(cur());
      if (prec < minPrec)
        return lhs;
      std::string op = next().text;
      auto rhs = binary(prec + 1);
      auto loc = lhs->location;
      std::vector<AstPtr> kids;
      kids.push_back(std::move(lhs));
      kids.push_back(std::move(rhs));
      lhs = makeNode(AstKind::BinaryOp, op, loc, std::move(kids));
    }
  }

  AstPtr unary() {
    if (cur().kind == TokenKind::Punct) {
      const std::string &op = cur().text;
      if (op == "*" || op == "&" || op == "!" || op == "-" || op == "~") {
        auto loc = cur().location;
        std::string text = next().text;
        std::vector<AstPtr> kids;
        kids.push_back(unary());
        return makeNode(AstKind::UnaryOp, text, loc, std::move(kids));
      }
      if (op == "+") {
        next();
        return unary();
      }
      if (op == "++" || op == "--")
        fail("increment/decrement operators are not supported");
    }
    rejectUnsupported();
    return postfix(primary());
  }

  AstPtr postfix(AstPtr base) {
    for (;;) {
      auto loc = base->location;
      if (isPunct("(")) {
        next();
        std::vector<AstPtr> kids;
        kids.push_back(std::move(base));
        if (!isPunct(")")) {
          do {
            kids.push_back(assignment());
          } while (isPunct(",") && (next(), true));
        }
        expectPunct(")");
        base = makeNode(AstKind::Call, "", loc, std::move(kids));
      } else if (isPunct("[")) {
        next();
        std::vector<AstPtr> kids;
        kids.push_back(std::move(base));
        kids.push_back(expression());
        expectPunct("]");
        base = makeNode(AstKind::Index, "", loc, std::move(kids));
      } else if (isPunct(".") || isPunct("->")) {
        std::string op = next().text;
        auto fieldLoc = cur().location;
        std::string field = expectIdentifier("member name");
        std::vector<AstPtr> kids;
        kids.push_back(std::move(base));
        kids.push_back(makeNode(AstKind::Identifier, field, fieldLoc));
        base = makeNode(AstKind::Member, op, loc, std::move(kids));
      } else if (isPunct("++") || isPunct("--")) {
        fail("increment/decrement operators are not supported");
      } else {
        return base;
      }
    }
  }

  AstPtr primary() {
    const Token &t = cur();
    switch (t.kind) {
    case TokenKind::Identifier:
      return single(AstKind::Identifier, {}, t.text);
    case TokenKind::IntLiteral:
      return single(AstKind::IntLiteral, {}, t.text);
    case TokenKind::MetaVar:
      return single(AstKind::MetaVar, {}, t.text);
    case TokenKind::StringLiteral: {
      auto loc = t.location;
      std::string text = next().text;
      // adjacent literals concatenate
      while (at(TokenKind::StringLiteral))
        text += " " + next().text;
      return makeNode(AstKind::StringLiteral, std::move(text), loc);
    }
    case TokenKind::Punct:
      if (t.text == "(") {
        next();
        if (startsType())
          fail("casts are not supported");
        auto inner = expression();
        expectPunct(")");
        return inner;
      }
      break;
    default:
      break;
    }
    if (at(TokenKind::End))
      fail("unexpected end of input");
    fail("unexpected '" + t.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

} // namespace

AstPtr parseTranslationUnit(std::string_view text, const std::string &file) {
  return Parser(tokenize(text, file)).translationUnit(file);
}

AstPtr parsePatternTemplate(std::string_view text) {
  LexOptions options;
  options.metavariables = true;
  return Parser(tokenize(text, "<pattern>", options)).pattern();
}

} // namespace cbugscan
