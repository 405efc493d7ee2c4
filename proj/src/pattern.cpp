#include "cbugscan/pattern.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "cbugscan/error.hpp"
#include "cbugscan/line_config.hpp"
#include "cbugscan/parser.hpp"

namespace cbugscan {

namespace {

void collectMetavars(const AstNode &n, std::set<std::string> &out) {
  if (n.kind == AstKind::MetaVar)
    out.insert(n.text);
  for (const auto &c : n.children)
    collectMetavars(*c, out);
}

std::vector<std::string> metavarsOf(const AstNode &templ) {
  std::set<std::string> names;
  collectMetavars(templ, names);
  return {names.begin(), names.end()};
}

bool matchInto(const AstNode &t, const AstNode &n, Binding &binding) {
  if (t.kind == AstKind::MetaVar) {
    auto [it, inserted] = binding.emplace(t.text, &n);
    return inserted || structurallyEqual(*it->second, n);
  }
  if (t.kind != n.kind || t.text != n.text || t.size() != n.size())
    return false;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!matchInto(t.child(i), n.child(i), binding))
      return false;
  return true;
}

} // namespace

Pattern::Pattern(std::string name, AstPtr templ)
    : name_(std::move(name)), template_(std::move(templ)), metavars_(metavarsOf(*template_)) {}

Pattern::Pattern(const Pattern &other)
    : name_(other.name_), template_(cloneTree(*other.template_)), metavars_(other.metavars_) {}

Pattern &Pattern::operator=(const Pattern &other) {
  if (this != &other) {
    name_ = other.name_;
    template_ = cloneTree(*other.template_);
    metavars_ = other.metavars_;
  }
  return *this;
}

Pattern parsePattern(std::string name, std::string_view source) {
  return Pattern(std::move(name), parsePatternTemplate(source));
}

std::optional<Binding> matchNode(const Pattern &pattern, const AstNode &node) {
  Binding binding;
  if (!matchInto(pattern.templ(), node, binding))
    return std::nullopt;
  return binding;
}

AstPtr substitute(const AstNode &templ, const Binding &binding) {
  if (templ.kind == AstKind::MetaVar) {
    auto it = binding.find(templ.text);
    if (it == binding.end())
      throw Error("metavariable %" + templ.text + " is unbound");
    return cloneTree(*it->second);
  }
  auto copy = std::make_unique<AstNode>(templ.kind, templ.text, templ.location);
  copy->type = templ.type;
  for (const auto &c : templ.children)
    copy->children.push_back(substitute(*c, binding));
  return copy;
}

std::string bindingKey(const Binding &binding) {
  std::string key;
  for (const auto &[name, node] : binding) {
    if (!key.empty())
      key += ";";
    key += name + "=" + toSource(*node);
  }
  return key;
}

std::string expandTemplate(std::string_view text,
                           const std::map<std::string, std::string> &values) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '%' && i + 1 < text.size() &&
        (std::isalpha(static_cast<unsigned char>(text[i + 1])) || text[i + 1] == '_')) {
      std::size_t j = i + 1;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      std::string name(text.substr(i + 1, j - i - 1));
      auto it = values.find(name);
      if (it != values.end()) {
        out += it->second;
        i = j;
        continue;
      }
    }
    out += text[i++];
  }
  return out;
}

std::vector<PatternMatch> findMatches(const std::vector<Pattern> &patterns,
                                      const AstNode &root) {
  std::vector<PatternMatch> out;
  forEachSubexpression(root, [&](const AstNode &n) {
    for (const auto &p : patterns)
      if (auto b = matchNode(p, n))
        out.push_back(PatternMatch{&p, &n, std::move(*b)});
  });
  return out;
}

std::vector<Pattern> parsePatternFile(std::string_view text) {
  std::vector<Pattern> patterns;
  for (const auto &line : splitConfigLines(text, "<patterns>")) {
    if (!line.is(0, "pattern") || line.tokens.size() != 3 || line.tokens[1].quoted ||
        !line.tokens[2].quoted)
      throw ConfigError("line " + std::to_string(line.number) +
                        ": expected `pattern NAME \"TEMPLATE\"`");
    patterns.push_back(parsePattern(line.tokens[1].text, line.tokens[2].text));
  }
  return patterns;
}

} // namespace cbugscan
