#include "preord/workspace.hpp"

#include <fstream>
#include <sstream>

namespace preord {

// ---------------------------------------------------------------------------
// Workspace

bool Workspace::has_object(const std::string& name) const {
  for (const auto& [n, _] : objects_)
    if (n == name) return true;
  return false;
}

bool Workspace::has_morphism(const std::string& name) const {
  for (const auto& m : morphisms_)
    if (m.name == name) return true;
  return false;
}

const PreOrdObj& Workspace::object(const std::string& name) const {
  for (const auto& [n, x] : objects_)
    if (n == name) return x;
  throw UnknownName("unknown object: " + name);
}

const NamedMorphism& Workspace::morphism(const std::string& name) const {
  for (const auto& m : morphisms_)
    if (m.name == name) return m;
  throw UnknownName("unknown morphism: " + name);
}

void Workspace::add_object(const std::string& name, PreOrdObj obj) {
  if (has_object(name) || has_morphism(name)) throw std::invalid_argument("duplicate name: " + name);
  objects_.emplace_back(name, std::move(obj));
}

void Workspace::add_morphism(const std::string& name, const std::string& dom,
                             const std::string& cod, PreOrdMor mor) {
  if (has_object(name) || has_morphism(name)) throw std::invalid_argument("duplicate name: " + name);
  morphisms_.push_back({name, dom, cod, std::move(mor)});
}

// ---------------------------------------------------------------------------
// parsing

namespace {

struct Line {
  std::size_t no;
  std::vector<std::string> tok;
};

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> out;
  std::string raw;
  std::size_t no = 0;
  while (std::getline(in, raw)) {
    ++no;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::istringstream ls(raw);
    Line l{no, {}};
    std::string t;
    while (ls >> t) l.tok.push_back(t);
    if (!l.tok.empty()) out.push_back(std::move(l));
  }
  return out;
}

bool is_integer(const std::string& s) {
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

Int parse_int(const Line& l, std::size_t k) {
  const std::string& s = l.tok[k];
  if (!is_integer(s)) throw ParseError(l.no, "expected an integer, got '" + s + "'");
  return Int(s[0] == '+' ? s.substr(1) : s);
}

std::size_t parse_count(const Line& l, std::size_t k) {
  Int v = parse_int(l, k);
  if (v < 0 || !v.fits_ulong_p()) throw ParseError(l.no, "expected a nonnegative count");
  return v.get_ui();
}

std::vector<Int> ints_from(const Line& l, std::size_t start) {
  std::vector<Int> out;
  for (std::size_t k = start; k < l.tok.size(); ++k) out.push_back(parse_int(l, k));
  return out;
}

std::vector<Elem> elems_from(const Line& l, std::size_t start) {
  std::vector<Elem> out;
  for (std::size_t k = start; k < l.tok.size(); ++k) {
    std::size_t v = parse_count(l, k);
    if (v > 0xffffffffu) throw ParseError(l.no, "element index too large");
    out.push_back(static_cast<Elem>(v));
  }
  return out;
}

bool starts_block(const Line& l) { return l.tok[0] == "object" || l.tok[0] == "morphism"; }

void expect(const Line& l, const std::string& key, std::size_t ntok) {
  if (l.tok[0] != key) throw ParseError(l.no, "expected '" + key + "', got '" + l.tok[0] + "'");
  if (ntok && l.tok.size() != ntok) throw ParseError(l.no, "malformed '" + key + "' line");
}

// Rethrows library validation failures as LoadError at `line`.
template <class F>
auto at_line(std::size_t line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ValidationError& e) {
    throw LoadError(line, e.what(), e.witness());
  } catch (const GroupAxiomError& e) {
    throw LoadError(line, e.what(), "");
  } catch (const HomomorphismError& e) {
    throw LoadError(line, e.what(),
                    std::to_string(e.x()) + " " + std::to_string(e.y()));
  } catch (const std::invalid_argument& e) {
    throw LoadError(line, e.what(), "");
  }
}

class Parser {
 public:
  Parser(std::vector<Line> lines, std::size_t cap) : lines_(std::move(lines)), cap_(cap) {}

  Workspace run() {
    while (i_ < lines_.size()) {
      const Line& l = lines_[i_];
      if (l.tok[0] == "object") {
        parse_object();
      } else if (l.tok[0] == "morphism") {
        parse_morphism();
      } else {
        throw ParseError(l.no, "expected 'object' or 'morphism', got '" + l.tok[0] + "'");
      }
    }
    return std::move(ws_);
  }

 private:
  const Line& next(const std::string& what) {
    if (i_ >= lines_.size())
      throw ParseError(lines_.empty() ? 0 : lines_.back().no, "unexpected end of file, expected " + what);
    return lines_[i_++];
  }

  void claim_name(const Line& l, const std::string& name) {
    if (ws_.has_object(name) || ws_.has_morphism(name))
      throw ParseError(l.no, "duplicate name '" + name + "'");
  }

  void parse_object() {
    const Line& head = next("object");
    expect(head, "object", 2);
    const std::string name = head.tok[1];
    claim_name(head, name);
    const Line& uni = next("universe");
    expect(uni, "universe", 2);
    if (uni.tok[1] == "abelian") {
      parse_abelian(head, name);
    } else if (uni.tok[1] == "finite") {
      parse_finite(head, name);
    } else {
      throw ParseError(uni.no, "unknown universe '" + uni.tok[1] + "'");
    }
  }

  void parse_abelian(const Line& head, const std::string& name) {
    const Line& rl = next("rank");
    expect(rl, "rank", 2);
    std::size_t rank = parse_count(rl, 1);
    std::vector<IntVec> rels, cone;
    std::size_t cone_line = head.no;
    while (i_ < lines_.size() && !starts_block(lines_[i_])) {
      const Line& l = lines_[i_++];
      if (l.tok[0] != "rel" && l.tok[0] != "cone")
        throw ParseError(l.no, "expected 'rel' or 'cone', got '" + l.tok[0] + "'");
      IntVec v = ints_from(l, 1);
      if (v.size() != rank)
        throw LoadError(l.no,
                        "dimension error: " + l.tok[0] + " has " + std::to_string(v.size()) +
                            " entries, rank is " + std::to_string(rank),
                        to_string(v));
      (l.tok[0] == "rel" ? rels : cone).push_back(std::move(v));
      if (l.tok[0] == "cone" && cone_line == head.no) cone_line = l.no;
    }
    auto group = make_group(rank, IntMatrix::from_rows(rels, rank));
    ws_.add_object(name, at_line(cone_line, [&] { return make_object(group, cone); }));
  }

  void parse_finite(const Line& head, const std::string& name) {
    const Line& ol = next("order");
    expect(ol, "order", 2);
    std::size_t n = parse_count(ol, 1);
    if (n == 0) throw ParseError(ol.no, "order must be positive");
    if (n > cap_)
      throw LoadError(ol.no, "order " + std::to_string(n) + " exceeds the cap " + std::to_string(cap_), "");
    const Line& tl = next("table");
    expect(tl, "table", 1);
    std::vector<std::vector<Elem>> table;
    for (std::size_t r = 0; r < n; ++r) {
      const Line& row = next("table row");
      if (starts_block(row)) throw ParseError(row.no, "table has too few rows");
      auto vals = elems_from(row, 0);
      if (vals.size() != n)
        throw LoadError(row.no, "table row has " + std::to_string(vals.size()) + " entries, expected " +
                                    std::to_string(n), "");
      table.push_back(std::move(vals));
    }
    FiniteGroup g = at_line(tl.no, [&] { return FiniteGroup::validate(table, cap_); });
    std::vector<Elem> cone;
    std::size_t cone_line = head.no;
    while (i_ < lines_.size() && !starts_block(lines_[i_])) {
      const Line& l = lines_[i_++];
      expect(l, "cone", 0);
      auto vals = elems_from(l, 1);
      cone.insert(cone.end(), vals.begin(), vals.end());
      if (cone_line == head.no) cone_line = l.no;
    }
    for (Elem x : cone)
      if (x >= n) throw LoadError(cone_line, "cone element out of range", std::to_string(x));
    ws_.add_object(name, at_line(cone_line, [&] { return make_object(g, cone); }));
  }

  void parse_morphism() {
    const Line& head = next("morphism");
    expect(head, "morphism", 0);
    if (head.tok.size() != 6 || head.tok[2] != ":" || head.tok[4] != "->")
      throw ParseError(head.no, "expected 'morphism <name> : <dom> -> <cod>'");
    const std::string name = head.tok[1];
    claim_name(head, name);
    const std::string dn = head.tok[3], cn = head.tok[5];
    for (const auto& ref : {dn, cn})
      if (!ws_.has_object(ref)) throw ParseError(head.no, "unknown object '" + ref + "'");
    const PreOrdObj& dom = ws_.object(dn);
    const PreOrdObj& cod = ws_.object(cn);
    if (dom.universe() != cod.universe())
      throw LoadError(head.no, "universe mismatch between " + dn + " and " + cn, "");
    if (dom.is_abelian()) {
      const Line& ml = next("matrix");
      expect(ml, "matrix", 1);
      std::size_t r = dom.ab().group.rank(), c = cod.ab().group.rank();
      std::vector<IntVec> rows;
      for (std::size_t k = 0; c > 0 && k < r; ++k) {
        const Line& row = next("matrix row");
        if (starts_block(row)) throw ParseError(row.no, "matrix has too few rows");
        IntVec v = ints_from(row, 0);
        if (v.size() != c)
          throw LoadError(row.no, "dimension error: matrix row has " + std::to_string(v.size()) +
                                      " entries, codomain rank is " + std::to_string(c),
                          to_string(v));
        rows.push_back(std::move(v));
      }
      auto m = IntMatrix::from_rows(rows, c);
      ws_.add_morphism(name, dn, cn, at_line(head.no, [&] { return make_morphism(dom, cod, m); }));
    } else {
      const Line& ml = next("map");
      expect(ml, "map", 0);
      auto map = elems_from(ml, 1);
      std::size_t n = dom.fin().group.order();
      if (map.size() != n)
        throw LoadError(ml.no, "map has " + std::to_string(map.size()) + " entries, expected " +
                                   std::to_string(n), "");
      for (Elem y : map)
        if (y >= cod.fin().group.order())
          throw LoadError(ml.no, "map value out of range", std::to_string(y));
      ws_.add_morphism(name, dn, cn, at_line(head.no, [&] { return make_morphism(dom, cod, map); }));
    }
  }

  std::vector<Line> lines_;
  std::size_t cap_;
  std::size_t i_ = 0;
  Workspace ws_;
};

void put_ints(std::ostream& os, const std::string& key, const IntVec& v) {
  os << key;
  for (const auto& x : v) os << ' ' << x.get_str();
  os << '\n';
}

}  // namespace

Workspace parse_workspace(std::istream& in, std::size_t order_cap) {
  return Parser(tokenize(in), order_cap).run();
}

Workspace parse_workspace(const std::string& text, std::size_t order_cap) {
  std::istringstream in(text);
  return parse_workspace(in, order_cap);
}

Workspace load_workspace(const std::string& path, std::size_t order_cap) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open workspace file: " + path);
  return parse_workspace(in, order_cap);
}

// ---------------------------------------------------------------------------
// printing

std::string print_object(const std::string& name, const PreOrdObj& x) {
  std::ostringstream os;
  os << "object " << name << "\n";
  if (x.is_abelian()) {
    const auto& g = x.ab().group;
    os << "universe abelian\nrank " << g.rank() << "\n";
    for (const auto& r : g.relations().row_list()) put_ints(os, "rel", r);
    for (const auto& c : x.ab().cone) put_ints(os, "cone", c);
  } else {
    const auto& g = x.fin().group;
    os << "universe finite\norder " << g.order() << "\ntable\n";
    for (const auto& row : g.table()) {
      for (std::size_t k = 0; k < row.size(); ++k) os << (k ? " " : "") << row[k];
      os << "\n";
    }
    os << "cone";
    for (Elem e : x.fin().cone) os << ' ' << e;
    os << "\n";
  }
  return os.str();
}

std::string print_morphism(const std::string& name, const std::string& dom, const std::string& cod,
                           const PreOrdMor& m) {
  std::ostringstream os;
  os << "morphism " << name << " : " << dom << " -> " << cod << "\n";
  if (m.universe() == Universe::abelian) {
    os << "matrix\n";
    for (const auto& r : m.ab().matrix().row_list()) {
      for (std::size_t k = 0; k < r.size(); ++k) os << (k ? " " : "") << r[k].get_str();
      os << "\n";
    }
  } else {
    os << "map";
    for (Elem e : m.fin().map()) os << ' ' << e;
    os << "\n";
  }
  return os.str();
}

std::string print_workspace(const Workspace& ws) {
  std::string out;
  for (const auto& [n, x] : ws.objects()) out += print_object(n, x) + "\n";
  for (const auto& m : ws.morphisms()) out += print_morphism(m.name, m.dom, m.cod, m.mor) + "\n";
  return out;
}

}  // namespace preord
