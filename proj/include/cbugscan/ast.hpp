#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cbugscan/location.hpp"

namespace cbugscan {

enum class AstKind {
  TranslationUnitRoot,
  FunctionDef,
  ParamDecl,
  VarDecl,
  StructDecl,
  Block,
  If,
  While,
  For,
  Return,
  Goto,
  Label,
  Break,
  Continue,
  ExprStatement,
  EmptyStatement,
  Assign,
  BinaryOp,
  UnaryOp,
  Call,
  Member,
  Index,
  Identifier,
  IntLiteral,
  StringLiteral,
  MetaVar,
};

std::string_view kindName(AstKind kind);

/// True for kinds that denote statements (and declarations inside bodies).
bool isStatementKind(AstKind kind);

struct AstNode;
using AstPtr = std::unique_ptr<AstNode>;

/// One vertex of the syntax tree.
///
/// Child layout per kind:
///   FunctionDef   [ParamDecl..., Block]            text = name, type = return type
///   ParamDecl     []                               text = name (may be empty)
///   VarDecl       [initializer]?                   text = name
///   StructDecl    [VarDecl...]                     text = tag
///   If            [cond, then, else?]
///   While         [cond, body]
///   For           [init, cond, step, body]         absent parts are EmptyStatement
///   Return        [expr]?
///   Goto          []                               text = label
///   Label         [statement]                      text = label
///   ExprStatement [expr]
///   Assign        [lhs, rhs]                       text = "=", "+=", ...
///   BinaryOp      [lhs, rhs]                       text = operator
///   UnaryOp       [operand]                        text = "*", "&", "!", "-", "~"
///   Call          [callee, args...]
///   Member        [base, Identifier field]         text = "->" or "."
///   Index         [base, index]
struct AstNode {
  AstKind kind;
  std::string text;
  std::string type;
  SourceLocation location;
  /// Location of the closing brace; only set for Block.
  SourceLocation endLocation;
  std::vector<AstPtr> children;

  AstNode(AstKind k, std::string t, SourceLocation loc)
      : kind(k), text(std::move(t)), location(std::move(loc)) {}

  const AstNode &child(std::size_t i) const { return *children.at(i); }
  std::size_t size() const { return children.size(); }
};

AstPtr makeNode(AstKind kind, std::string text, SourceLocation loc,
                std::vector<AstPtr> children = {});

AstPtr cloneTree(const AstNode &node);

/// Compares kind, text and children; ignores locations and types.
bool structurallyEqual(const AstNode &a, const AstNode &b);

/// Post-order walk over an expression tree. Does not descend into nested
/// statements other than `root` itself, so walking a Label visits only the
/// label, not the statement it labels.
void forEachSubexpression(const AstNode &root,
                          const std::function<void(const AstNode &)> &fn);

/// Renders C source text with the minimal parenthesization the grammar
/// needs. Statements render without their nested bodies.
std::string toSource(const AstNode &node);

/// Indented s-expression dump: `(Kind "text" file:line:col ...children)`.
std::string dumpAst(const AstNode &node);

} // namespace cbugscan
