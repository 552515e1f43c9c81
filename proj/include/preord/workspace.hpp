#pragma once

// Line-oriented workspace files of named objects and morphisms.
//
//   object <name>
//   universe abelian|finite
//   abelian:  rank <n>, then any number of `rel <n ints>` and `cone <n ints>`
//   finite:   order <n>, `table` followed by n rows of n indices, `cone <indices>`
//   morphism <name> : <dom> -> <cod>
//   abelian:  `matrix` followed by one row of cod-rank ints per dom generator
//   finite:   map <order(dom) indices>
//
// `#` starts a comment; tokens are whitespace separated.

#include "preord/preordgrp.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace preord {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Data that parses but violates an object or morphism invariant.
class LoadError : public std::runtime_error {
 public:
  LoadError(std::size_t line, const std::string& what, std::string witness)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line),
        witness_(std::move(witness)) {}
  std::size_t line() const { return line_; }
  const std::string& witness() const { return witness_; }

 private:
  std::size_t line_;
  std::string witness_;
};

class UnknownName : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct NamedMorphism {
  std::string name, dom, cod;
  PreOrdMor mor;
};

class Workspace {
 public:
  const std::vector<std::pair<std::string, PreOrdObj>>& objects() const { return objects_; }
  const std::vector<NamedMorphism>& morphisms() const { return morphisms_; }

  bool has_object(const std::string& name) const;
  bool has_morphism(const std::string& name) const;
  const PreOrdObj& object(const std::string& name) const;
  const NamedMorphism& morphism(const std::string& name) const;

  /// Throws std::invalid_argument on a duplicate name.
  void add_object(const std::string& name, PreOrdObj obj);
  void add_morphism(const std::string& name, const std::string& dom, const std::string& cod,
                    PreOrdMor mor);

 private:
  std::vector<std::pair<std::string, PreOrdObj>> objects_;
  std::vector<NamedMorphism> morphisms_;
};

Workspace parse_workspace(std::istream& in, std::size_t order_cap = kDefaultOrderCap);
Workspace parse_workspace(const std::string& text, std::size_t order_cap = kDefaultOrderCap);
/// Throws std::runtime_error when the file cannot be opened.
Workspace load_workspace(const std::string& path, std::size_t order_cap = kDefaultOrderCap);

std::string print_object(const std::string& name, const PreOrdObj& x);
std::string print_morphism(const std::string& name, const std::string& dom, const std::string& cod,
                           const PreOrdMor& m);
std::string print_workspace(const Workspace& ws);

}  // namespace preord
