#pragma once

// Sorts (name sorts, data sorts, abstraction sorts) and signatures.

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "nomlog/names.hpp"

namespace nomlog {

struct SortError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Sort {
 public:
  enum class Kind { NameSort, DataSort, Abstraction };

  static Sort name_sort(std::string nu) {
    return Sort(std::make_shared<Node>(Node{Kind::NameSort, std::move(nu), {}}));
  }
  static Sort data_sort(std::string delta) {
    return Sort(std::make_shared<Node>(Node{Kind::DataSort, std::move(delta), {}}));
  }
  static Sort abstraction(std::string nu, Sort body) {
    return Sort(std::make_shared<Node>(
        Node{Kind::Abstraction, std::move(nu), std::move(body.node_)}));
  }

  Kind kind() const { return node_->kind; }
  bool is_name_sort() const { return node_->kind == Kind::NameSort; }
  bool is_data_sort() const { return node_->kind == Kind::DataSort; }
  bool is_abstraction() const { return node_->kind == Kind::Abstraction; }

  // For name/data sorts: the sort ident.  For abstractions: the binder's
  // name-type ident.
  const std::string& ident() const { return node_->ident; }

  Sort body() const {
    if (!is_abstraction()) throw SortError("sort has no body: " + to_string());
    return Sort(node_->body);
  }

  std::string to_string() const {
    switch (node_->kind) {
      case Kind::NameSort:
      case Kind::DataSort:
        return node_->ident;
      case Kind::Abstraction:
        return "<" + node_->ident + ">" + Sort(node_->body).to_string();
    }
    return "?";
  }

  friend bool operator==(const Sort& a, const Sort& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->kind != b.node_->kind || a.node_->ident != b.node_->ident)
      return false;
    if (a.node_->kind == Kind::Abstraction)
      return Sort(a.node_->body) == Sort(b.node_->body);
    return true;
  }
  friend bool operator!=(const Sort& a, const Sort& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    std::string ident;
    std::shared_ptr<const Node> body;  // abstraction only
  };
  explicit Sort(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct FuncDecl {
  std::vector<Sort> args;
  Sort result;  // always a data sort
};

struct PredDecl {
  std::vector<Sort> args;
};

// A language: name-types, data-types, constants, function symbols, and
// relation symbols.  Symbol names are unique across categories.
class Signature {
 public:
  void declare_name_type(const std::string& nu) { name_types_.insert({nu, NameType{nu}}); }
  bool has_name_type(const std::string& nu) const { return name_types_.count(nu) > 0; }

  void declare_data_type(const std::string& delta) {
    if (name_types_.count(delta))
      throw SortError("'" + delta + "' already declared as a name type");
    data_types_.insert(delta);
  }
  bool has_data_type(const std::string& delta) const { return data_types_.count(delta) > 0; }

  void declare_const(const std::string& c, Sort result) {
    check_new_symbol(c);
    if (!result.is_data_sort())
      throw SortError("constant '" + c + "' must have a data sort");
    check_sort(result);
    consts_.insert({c, std::move(result)});
  }

  void declare_func(const std::string& f, std::vector<Sort> args, Sort result) {
    if (args.empty()) return declare_const(f, std::move(result));
    check_new_symbol(f);
    if (!result.is_data_sort())
      throw SortError("function '" + f + "' must produce a data sort");
    for (const auto& s : args) check_sort(s);
    check_sort(result);
    funcs_.insert({f, FuncDecl{std::move(args), std::move(result)}});
  }

  void declare_pred(const std::string& p, std::vector<Sort> args) {
    check_new_symbol(p);
    for (const auto& s : args) check_sort(s);
    preds_.insert({p, PredDecl{std::move(args)}});
  }

  bool has_const(const std::string& c) const { return consts_.count(c) > 0; }
  bool has_func(const std::string& f) const { return funcs_.count(f) > 0; }
  bool has_pred(const std::string& p) const { return preds_.count(p) > 0; }

  const Sort& const_sort(const std::string& c) const {
    auto it = consts_.find(c);
    if (it == consts_.end()) throw SortError("unknown constant '" + c + "'");
    return it->second;
  }
  const FuncDecl& func_decl(const std::string& f) const {
    auto it = funcs_.find(f);
    if (it == funcs_.end()) throw SortError("unknown function symbol '" + f + "'");
    return it->second;
  }
  const PredDecl& pred_decl(const std::string& p) const {
    auto it = preds_.find(p);
    if (it == preds_.end()) throw SortError("unknown predicate '" + p + "'");
    return it->second;
  }

  NameType name_type(const std::string& nu) const {
    auto it = name_types_.find(nu);
    if (it == name_types_.end()) throw SortError("unknown name type '" + nu + "'");
    return it->second;
  }

  const std::map<std::string, NameType>& name_types() const { return name_types_; }
  const std::set<std::string>& data_types() const { return data_types_; }
  const std::map<std::string, Sort>& consts() const { return consts_; }
  const std::map<std::string, FuncDecl>& funcs() const { return funcs_; }
  const std::map<std::string, PredDecl>& preds() const { return preds_; }

  // A sort is admissible if every ident it mentions is declared.
  void check_sort(const Sort& s) const {
    switch (s.kind()) {
      case Sort::Kind::NameSort:
        if (!has_name_type(s.ident()))
          throw SortError("unknown name type '" + s.ident() + "'");
        break;
      case Sort::Kind::DataSort:
        if (!has_data_type(s.ident()))
          throw SortError("unknown data type '" + s.ident() + "'");
        break;
      case Sort::Kind::Abstraction:
        if (!has_name_type(s.ident()))
          throw SortError("unknown name type '" + s.ident() + "'");
        check_sort(s.body());
        break;
    }
  }

 private:
  void check_new_symbol(const std::string& s) const {
    if (consts_.count(s) || funcs_.count(s) || preds_.count(s))
      throw SortError("duplicate symbol '" + s + "'");
  }

  std::map<std::string, NameType> name_types_;
  std::set<std::string> data_types_;
  std::map<std::string, Sort> consts_;
  std::map<std::string, FuncDecl> funcs_;
  std::map<std::string, PredDecl> preds_;
};

// Ordered variable/name declarations for sort checking open terms.
class SortContext {
 public:
  void bind_var(const std::string& x, Sort s) {
    if (vars_.count(x)) throw SortError("duplicate ident '" + x + "' in context");
    vars_.insert({x, std::move(s)});
  }
  bool has_var(const std::string& x) const { return vars_.count(x) > 0; }
  const Sort& var_sort(const std::string& x) const {
    auto it = vars_.find(x);
    if (it == vars_.end()) throw SortError("unbound variable '" + x + "'");
    return it->second;
  }
  const std::map<std::string, Sort>& vars() const { return vars_; }

 private:
  std::map<std::string, Sort> vars_;
};

}  // namespace nomlog
