#include "cbugscan/ast.hpp"

#include <sstream>

namespace cbugscan {

std::string_view kindName(AstKind kind) {
  switch (kind) {
  case AstKind::TranslationUnitRoot: return "TranslationUnitRoot";
  case AstKind::FunctionDef: return "FunctionDef";
  case AstKind::ParamDecl: return "ParamDecl";
  case AstKind::VarDecl: return "VarDecl";
  case AstKind::StructDecl: return "StructDecl";
  case AstKind::Block: return "Block";
  case AstKind::If: return "If";
  case AstKind::While: return "While";
  case AstKind::For: return "For";
  case AstKind::Return: return "Return";
  case AstKind::Goto: return "Goto";
  case AstKind::Label: return "Label";
  case AstKind::Break: return "Break";
  case AstKind::Continue: return "Continue";
  case AstKind::ExprStatement: return "ExprStatement";
  case AstKind::EmptyStatement: return "EmptyStatement";
  case AstKind::Assign: return "Assign";
  case AstKind::BinaryOp: return "BinaryOp";
  case AstKind::UnaryOp: return "UnaryOp";
  case AstKind::Call: return "Call";
  case AstKind::Member: return "Member";
  case AstKind::Index: return "Index";
  case AstKind::Identifier: return "Identifier";
  case AstKind::IntLiteral: return "IntLiteral";
  case AstKind::StringLiteral: return "StringLiteral";
  case AstKind::MetaVar: return "MetaVar";
  }
  return "?";
}

bool isStatementKind(AstKind kind) {
  switch (kind) {
  case AstKind::VarDecl:
  case AstKind::Block:
  case AstKind::If:
  case AstKind::While:
  case AstKind::For:
  case AstKind::Return:
  case AstKind::Goto:
  case AstKind::Label:
  case AstKind::Break:
  case AstKind::Continue:
  case AstKind::ExprStatement:
  case AstKind::EmptyStatement:
    return true;
  default:
    return false;
  }
}

AstPtr makeNode(AstKind kind, std::string text, SourceLocation loc,
                std::vector<AstPtr> children) {
  auto node = std::make_unique<AstNode>(kind, std::move(text), std::move(loc));
  node->children = std::move(children);
  return node;
}

AstPtr cloneTree(const AstNode &node) {
  auto copy = std::make_unique<AstNode>(node.kind, node.text, node.location);
  copy->type = node.type;
  copy->endLocation = node.endLocation;
  copy->children.reserve(node.children.size());
  for (const auto &c : node.children)
    copy->children.push_back(cloneTree(*c));
  return copy;
}

bool structurallyEqual(const AstNode &a, const AstNode &b) {
  if (a.kind != b.kind || a.text != b.text || a.size() != b.size())
    return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!structurallyEqual(a.child(i), b.child(i)))
      return false;
  return true;
}

void forEachSubexpression(const AstNode &root,
                          const std::function<void(const AstNode &)> &fn) {
  for (const auto &c : root.children) {
    if (isStatementKind(c->kind))
      continue;
    forEachSubexpression(*c, fn);
  }
  fn(root);
}

namespace {

int binaryPrecedence(std::string_view op) {
  if (op == "||") return 2;
  if (op == "&&") return 3;
  if (op == "|") return 4;
  if (op == "^") return 5;
  if (op == "&") return 6;
  if (op == "==" || op == "!=") return 7;
  if (op == "<" || op == ">" || op == "<=" || op == ">=") return 8;
  if (op == "<<" || op == ">>") return 9;
  if (op == "+" || op == "-") return 10;
  return 11; // * / %
}

constexpr int kAssignPrec = 1;
constexpr int kUnaryPrec = 12;
constexpr int kPostfixPrec = 13;
constexpr int kPrimaryPrec = 14;

int precedenceOf(const AstNode &n) {
  switch (n.kind) {
  case AstKind::Assign: return kAssignPrec;
  case AstKind::BinaryOp: return binaryPrecedence(n.text);
  case AstKind::UnaryOp: return kUnaryPrec;
  case AstKind::Call:
  case AstKind::Member:
  case AstKind::Index: return kPostfixPrec;
  default: return kPrimaryPrec;
  }
}

std::string expr(const AstNode &n);

std::string wrap(const AstNode &n, int minPrec) {
  std::string s = expr(n);
  if (precedenceOf(n) < minPrec)
    return "(" + s + ")";
  return s;
}

std::string expr(const AstNode &n) {
  switch (n.kind) {
  case AstKind::Identifier:
  case AstKind::IntLiteral:
  case AstKind::StringLiteral:
    return n.text;
  case AstKind::MetaVar:
    return "%" + n.text;
  case AstKind::Assign:
    return wrap(n.child(0), kUnaryPrec) + " " + n.text + " " +
           wrap(n.child(1), kAssignPrec);
  case AstKind::BinaryOp: {
    int p = binaryPrecedence(n.text);
    return wrap(n.child(0), p) + " " + n.text + " " + wrap(n.child(1), p + 1);
  }
  case AstKind::UnaryOp: {
    std::string operand = wrap(n.child(0), kUnaryPrec);
    // "- -x" and "& &x" must not fuse into "--" / "&&"
    if ((n.text == "-" || n.text == "&") && !operand.empty() &&
        operand.front() == n.text.front())
      return n.text + " " + operand;
    return n.text + operand;
  }
  case AstKind::Call: {
    std::string s = wrap(n.child(0), kPostfixPrec) + "(";
    for (std::size_t i = 1; i < n.size(); ++i) {
      if (i > 1)
        s += ", ";
      s += wrap(n.child(i), kAssignPrec);
    }
    return s + ")";
  }
  case AstKind::Member:
    return wrap(n.child(0), kPostfixPrec) + n.text + n.child(1).text;
  case AstKind::Index:
    return wrap(n.child(0), kPostfixPrec) + "[" + expr(n.child(1)) + "]";
  default:
    return toSource(n);
  }
}

std::string declarator(const AstNode &n) {
  // type strings look like "struct mutex *" or "int [4]"
  const std::string &t = n.type;
  auto bracket = t.find('[');
  if (bracket == std::string::npos) {
    if (!t.empty() && t.back() == '*')
      return t + n.text;
    return n.text.empty() ? t : t + " " + n.text;
  }
  std::string base = t.substr(0, bracket);
  while (!base.empty() && base.back() == ' ')
    base.pop_back();
  return base + " " + n.text + t.substr(bracket);
}

} // namespace

std::string toSource(const AstNode &n) {
  switch (n.kind) {
  case AstKind::TranslationUnitRoot:
    return "";
  case AstKind::FunctionDef: {
    std::string s = n.type;
    if (s.empty() || s.back() != '*')
      s += " ";
    s += n.text + "(";
    bool first = true;
    for (const auto &c : n.children) {
      if (c->kind != AstKind::ParamDecl)
        continue;
      if (!first)
        s += ", ";
      first = false;
      s += declarator(*c);
    }
    return s + ")";
  }
  case AstKind::ParamDecl:
    return declarator(n);
  case AstKind::VarDecl: {
    std::string s = declarator(n);
    if (!n.children.empty())
      s += " = " + expr(n.child(0));
    return s + ";";
  }
  case AstKind::StructDecl:
    return "struct " + n.text;
  case AstKind::Block:
    return "{";
  case AstKind::If:
    return "if (" + expr(n.child(0)) + ")";
  case AstKind::While:
    return "while (" + expr(n.child(0)) + ")";
  case AstKind::For: {
    auto part = [](const AstNode &p) {
      if (p.kind == AstKind::EmptyStatement)
        return std::string();
      if (p.kind == AstKind::ExprStatement)
        return expr(p.child(0));
      std::string s = toSource(p);
      if (!s.empty() && s.back() == ';')
        s.pop_back();
      return s;
    };
    std::string cond = n.child(1).kind == AstKind::EmptyStatement
                           ? std::string()
                           : expr(n.child(1));
    return "for (" + part(n.child(0)) + "; " + cond + "; " +
           part(n.child(2)) + ")";
  }
  case AstKind::Return:
    return n.children.empty() ? "return;" : "return " + expr(n.child(0)) + ";";
  case AstKind::Goto:
    return "goto " + n.text + ";";
  case AstKind::Label:
    return n.text + ":";
  case AstKind::Break:
    return "break;";
  case AstKind::Continue:
    return "continue;";
  case AstKind::ExprStatement:
    return expr(n.child(0)) + ";";
  case AstKind::EmptyStatement:
    return ";";
  default:
    return expr(n);
  }
}

namespace {

void dumpLines(const AstNode &n, int depth, std::vector<std::string> &out) {
  std::string line(static_cast<std::size_t>(depth) * 2, ' ');
  line += "(";
  line += kindName(n.kind);
  line += " \"";
  for (char c : n.text) {
    if (c == '"' || c == '\\')
      line += '\\';
    line += c;
  }
  line += "\" " + n.location.str();
  out.push_back(std::move(line));
  for (const auto &c : n.children)
    dumpLines(*c, depth + 1, out);
  out.back() += ")";
}

} // namespace

std::string dumpAst(const AstNode &node) {
  std::vector<std::string> lines;
  dumpLines(node, 0, lines);
  std::ostringstream os;
  for (const auto &l : lines)
    os << l << '\n';
  return os.str();
}

} // namespace cbugscan
