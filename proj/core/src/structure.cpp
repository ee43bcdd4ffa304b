#include "strata/structure.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "strata/errors.hpp"

namespace strata {

UPair make_upair(int x, int y) {
  return x <= y ? UPair{x, y} : UPair{y, x};
}

namespace {

std::uint64_t pack(int u, int v) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}

}  // namespace

int MembershipStructure::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw ValidationError("dangling-id", "unknown element id '" + id + "'", id);
  }
  return it->second;
}

std::optional<int> MembershipStructure::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool MembershipStructure::edge(int u, int v) const {
  if (edge_mode_ == EdgeMode::Explicit) {
    return edges_.count(pack(u, v)) > 0;
  }
  const auto& hu = hf_[static_cast<std::size_t>(u)];
  const auto& hv = hf_[static_cast<std::size_t>(v)];
  return hu && hv && hv->contains(*hu);
}

std::vector<int> MembershipStructure::extension(int x) const {
  std::vector<int> out;
  for (int z = 0; z < size(); ++z) {
    if (edge(z, x)) out.push_back(z);
  }
  return out;
}

bool MembershipStructure::f_defined(int x) const {
  if (f_mode_ == FMode::Element) return f_elem_[static_cast<std::size_t>(x)] >= 0;
  if (f_mode_ == FMode::SetValued) return f_set_[static_cast<std::size_t>(x)].has_value();
  return false;
}

int MembershipStructure::f_at(int x) const {
  if (f_mode_ != FMode::Element) {
    throw EvalError("f is not element-valued in this structure");
  }
  int y = f_elem_[static_cast<std::size_t>(x)];
  if (y < 0) {
    throw EvalError("f is undefined at '" + id_of(x) + "'");
  }
  return y;
}

std::optional<int> MembershipStructure::f_inverse(int y) const {
  if (f_mode_ != FMode::Element) {
    throw EvalError("f is not element-valued in this structure");
  }
  for (int x : f_domain_) {
    if (f_elem_[static_cast<std::size_t>(x)] == y) return x;
  }
  return std::nullopt;
}

const std::vector<bool>& MembershipStructure::f_set_at(int x) const {
  if (f_mode_ != FMode::SetValued) {
    throw EvalError("f is not set-valued in this structure");
  }
  const auto& v = f_set_[static_cast<std::size_t>(x)];
  if (!v) {
    throw EvalError("f is undefined at '" + id_of(x) + "'");
  }
  return *v;
}

bool MembershipStructure::f_set_contains(int x, int y) const {
  if (f_mode_ != FMode::SetValued) return false;
  const auto& v = f_set_[static_cast<std::size_t>(x)];
  return v && (*v)[static_cast<std::size_t>(y)];
}

std::vector<int> MembershipStructure::s_elements() const {
  std::vector<int> out;
  if (!s_) return out;
  for (int x = 0; x < size(); ++x) {
    if ((*s_)[static_cast<std::size_t>(x)]) out.push_back(x);
  }
  return out;
}

std::optional<HFSet> MembershipStructure::hf_of(int x) const {
  if (edge_mode_ != EdgeMode::Hf) return std::nullopt;
  return hf_[static_cast<std::size_t>(x)];
}

std::optional<int> MembershipStructure::code_of(
    const std::vector<int>& ext) const {
  std::vector<bool> want(static_cast<std::size_t>(size()), false);
  for (int z : ext) want[static_cast<std::size_t>(z)] = true;
  std::optional<int> found;
  for (int x = 0; x < size(); ++x) {
    bool match = true;
    for (int z = 0; z < size(); ++z) {
      if (edge(z, x) != want[static_cast<std::size_t>(z)]) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    if (found) {
      throw ValidationError("ambiguous-code",
                            "elements '" + id_of(*found) + "' and '" +
                                id_of(x) + "' have the same extension",
                            id_of(*found), id_of(x));
    }
    found = x;
  }
  return found;
}

// ---------------------------------------------------------------------------
// building and validation

MembershipStructure MembershipStructure::build(const Data& data) {
  MembershipStructure m;
  for (const auto& id : data.ids) {
    if (m.index_.count(id)) {
      throw FormatError("duplicate id '" + id + "' in domain");
    }
    m.index_[id] = static_cast<int>(m.ids_.size());
    m.ids_.push_back(id);
  }
  const int n = m.size();

  if (!data.edges.empty() && !data.hf.empty()) {
    throw FormatError("edge: and hf: lines are mutually exclusive");
  }
  if (!data.f_elem.empty() && !data.f_set.empty()) {
    throw FormatError("f: and fset: lines are mutually exclusive");
  }

  auto idx = [&](const std::string& id, const char* where) {
    auto it = m.index_.find(id);
    if (it == m.index_.end()) {
      throw ValidationError("dangling-id",
                            std::string("unknown id '") + id + "' in " + where,
                            id);
    }
    return it->second;
  };

  m.edge_mode_ = data.hf.empty() ? EdgeMode::Explicit : EdgeMode::Hf;
  m.hf_.assign(static_cast<std::size_t>(n), std::nullopt);
  for (const auto& [id, set] : data.hf) {
    int x = idx(id, "hf binding");
    if (m.hf_[static_cast<std::size_t>(x)]) {
      throw FormatError("duplicate hf binding for '" + id + "'");
    }
    m.hf_[static_cast<std::size_t>(x)] = set;
  }
  for (const auto& [a, b] : data.edges) {
    m.edges_.insert(pack(idx(a, "edge"), idx(b, "edge")));
  }

  // j: cycle notation; ids not mentioned stay fixed
  m.j_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) m.j_[static_cast<std::size_t>(i)] = i;
  std::vector<bool> moved(static_cast<std::size_t>(n), false);
  for (const auto& cycle : data.j_cycles) {
    std::vector<int> c;
    for (const auto& id : cycle) {
      int x = idx(id, "j cycle");
      if (moved[static_cast<std::size_t>(x)]) {
        throw FormatError("id '" + id + "' appears twice in j");
      }
      moved[static_cast<std::size_t>(x)] = true;
      c.push_back(x);
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
      m.j_[static_cast<std::size_t>(c[i])] = c[(i + 1) % c.size()];
    }
  }
  m.j_inv_.resize(static_cast<std::size_t>(n));
  m.j_identity_ = true;
  for (int i = 0; i < n; ++i) {
    m.j_inv_[static_cast<std::size_t>(m.j_[static_cast<std::size_t>(i)])] = i;
    if (m.j_[static_cast<std::size_t>(i)] != i) m.j_identity_ = false;
  }

  // f
  m.f_elem_.assign(static_cast<std::size_t>(n), -1);
  m.f_set_.assign(static_cast<std::size_t>(n), std::nullopt);
  if (!data.f_elem.empty()) {
    m.f_mode_ = FMode::Element;
    for (const auto& [a, b] : data.f_elem) {
      int x = idx(a, "f"), y = idx(b, "f");
      if (m.f_elem_[static_cast<std::size_t>(x)] >= 0) {
        throw FormatError("duplicate f binding for '" + a + "'");
      }
      m.f_elem_[static_cast<std::size_t>(x)] = y;
    }
  } else if (!data.f_set.empty()) {
    m.f_mode_ = FMode::SetValued;
    for (const auto& [a, members] : data.f_set) {
      int x = idx(a, "fset");
      if (m.f_set_[static_cast<std::size_t>(x)]) {
        throw FormatError("duplicate fset binding for '" + a + "'");
      }
      std::vector<bool> bits(static_cast<std::size_t>(n), false);
      for (const auto& mem : members) bits[static_cast<std::size_t>(idx(mem, "fset"))] = true;
      m.f_set_[static_cast<std::size_t>(x)] = std::move(bits);
    }
  }
  for (int x = 0; x < n; ++x) {
    if (m.f_defined(x)) m.f_domain_.push_back(x);
  }

  // S
  if (data.s) {
    std::vector<bool> bits(static_cast<std::size_t>(n), false);
    for (const auto& id : *data.s) bits[static_cast<std::size_t>(idx(id, "S"))] = true;
    m.s_ = std::move(bits);
  }

  // element-valued f is the injective mode; duplicates are a load error
  if (m.f_mode_ == FMode::Element) {
    std::vector<int> seen(static_cast<std::size_t>(n), -1);
    for (int x : m.f_domain_) {
      int y = m.f_elem_[static_cast<std::size_t>(x)];
      if (seen[static_cast<std::size_t>(y)] >= 0) {
        throw ValidationError(
            "injectivity-violation",
            "f maps '" + m.id_of(seen[static_cast<std::size_t>(y)]) +
                "' and '" + m.id_of(x) + "' to the same element",
            m.id_of(seen[static_cast<std::size_t>(y)]), m.id_of(x));
      }
      seen[static_cast<std::size_t>(y)] = x;
    }
  }

  // automorphism law: E(x,y) iff E(j(x), j(y))
  if (!m.j_identity_) {
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (m.edge(x, y) !=
            m.edge(m.j_[static_cast<std::size_t>(x)], m.j_[static_cast<std::size_t>(y)])) {
          throw ValidationError(
              "automorphism-violation",
              "j is not an automorphism: E(" + m.id_of(x) + "," + m.id_of(y) +
                  ") != E(" + m.id_of(m.j_of(x)) + "," + m.id_of(m.j_of(y)) +
                  ")",
              m.id_of(x), m.id_of(y));
        }
      }
    }
  }

  return m;
}

// ---------------------------------------------------------------------------
// text format

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

// splits "{a, b, c}" into ids; commas optional
std::vector<std::string> parse_id_set(const std::string& text, int line) {
  std::string t = text;
  auto l = t.find('{');
  auto r = t.rfind('}');
  if (l == std::string::npos || r == std::string::npos || r < l) {
    throw FormatError("expected {...} on line " + std::to_string(line));
  }
  std::string inner = t.substr(l + 1, r - l - 1);
  for (auto& c : inner) {
    if (c == ',') c = ' ';
  }
  return split_ws(inner);
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

MembershipStructure MembershipStructure::parse(const std::string& text) {
  Data data;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool saw_domain = false;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw FormatError("missing ':' on line " + std::to_string(lineno));
    }
    std::string label = trim(line.substr(0, colon));
    std::string rest = trim(line.substr(colon + 1));
    if (label == "domain") {
      if (saw_domain) {
        throw FormatError("duplicate domain: line " + std::to_string(lineno));
      }
      saw_domain = true;
      data.ids = split_ws(rest);
    } else if (label == "edge") {
      auto toks = split_ws(rest);
      if (toks.size() != 2) {
        throw FormatError("edge: expects two ids on line " +
                          std::to_string(lineno));
      }
      data.edges.emplace_back(toks[0], toks[1]);
    } else if (label == "hf") {
      auto eq = rest.find('=');
      if (eq == std::string::npos) {
        throw FormatError("hf: expects 'id = {...}' on line " +
                          std::to_string(lineno));
      }
      std::string id = trim(rest.substr(0, eq));
      std::string notation = trim(rest.substr(eq + 1));
      data.hf.emplace_back(id, HFSet::parse(notation));
    } else if (label == "j") {
      // cycles like (a b)(c d e)
      std::size_t pos = 0;
      while (pos < rest.size()) {
        if (std::isspace(static_cast<unsigned char>(rest[pos]))) {
          ++pos;
          continue;
        }
        if (rest[pos] != '(') {
          throw FormatError("j: expects cycle notation on line " +
                            std::to_string(lineno));
        }
        auto close = rest.find(')', pos);
        if (close == std::string::npos) {
          throw FormatError("j: unterminated cycle on line " +
                            std::to_string(lineno));
        }
        auto ids = split_ws(rest.substr(pos + 1, close - pos - 1));
        if (ids.empty()) {
          throw FormatError("j: empty cycle on line " + std::to_string(lineno));
        }
        data.j_cycles.push_back(std::move(ids));
        pos = close + 1;
      }
    } else if (label == "f") {
      auto arrow = rest.find("->");
      if (arrow == std::string::npos) {
        throw FormatError("f: expects 'id -> id' on line " +
                          std::to_string(lineno));
      }
      data.f_elem.emplace_back(trim(rest.substr(0, arrow)),
                               trim(rest.substr(arrow + 2)));
    } else if (label == "fset") {
      auto arrow = rest.find("->");
      if (arrow == std::string::npos) {
        throw FormatError("fset: expects 'id -> {...}' on line " +
                          std::to_string(lineno));
      }
      std::string id = trim(rest.substr(0, arrow));
      data.f_set.emplace_back(id,
                              parse_id_set(rest.substr(arrow + 2), lineno));
    } else if (label == "S") {
      data.s = parse_id_set(rest, lineno);
    } else {
      throw FormatError("unknown label '" + label + "' on line " +
                        std::to_string(lineno));
    }
  }
  if (!saw_domain) {
    throw FormatError("structure file has no domain: line");
  }
  return build(data);
}

std::string MembershipStructure::to_text() const {
  std::ostringstream out;
  out << "domain:";
  for (const auto& id : ids_) out << ' ' << id;
  out << '\n';
  if (edge_mode_ == EdgeMode::Hf) {
    for (int x = 0; x < size(); ++x) {
      if (hf_[static_cast<std::size_t>(x)]) {
        out << "hf: " << id_of(x) << " = "
            << hf_[static_cast<std::size_t>(x)]->to_string() << '\n';
      }
    }
  } else {
    for (int u = 0; u < size(); ++u) {
      for (int v = 0; v < size(); ++v) {
        if (edge(u, v)) out << "edge: " << id_of(u) << ' ' << id_of(v) << '\n';
      }
    }
  }
  if (!j_identity_) {
    out << "j:";
    std::vector<bool> seen(static_cast<std::size_t>(size()), false);
    for (int x = 0; x < size(); ++x) {
      if (seen[static_cast<std::size_t>(x)] || j_of(x) == x) continue;
      out << " (";
      int cur = x;
      bool first = true;
      while (!seen[static_cast<std::size_t>(cur)]) {
        seen[static_cast<std::size_t>(cur)] = true;
        if (!first) out << ' ';
        first = false;
        out << id_of(cur);
        cur = j_of(cur);
      }
      out << ')';
    }
    out << '\n';
  }
  if (f_mode_ == FMode::Element) {
    for (int x : f_domain_) {
      out << "f: " << id_of(x) << " -> " << id_of(f_elem_[static_cast<std::size_t>(x)])
          << '\n';
    }
  } else if (f_mode_ == FMode::SetValued) {
    for (int x : f_domain_) {
      out << "fset: " << id_of(x) << " -> {";
      bool first = true;
      const auto& bits = *f_set_[static_cast<std::size_t>(x)];
      for (int y = 0; y < size(); ++y) {
        if (!bits[static_cast<std::size_t>(y)]) continue;
        if (!first) out << ", ";
        first = false;
        out << id_of(y);
      }
      out << "}\n";
    }
  }
  if (s_) {
    out << "S: {";
    bool first = true;
    for (int x : s_elements()) {
      if (!first) out << ", ";
      first = false;
      out << id_of(x);
    }
    out << "}\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// membership flavors

bool mem_f(const MembershipStructure& m, int y, int x) {
  if (m.f_mode() != FMode::SetValued) {
    throw EvalError("memf needs a set-valued f");
  }
  return m.f_set_contains(x, y);
}

bool mem_star(const MembershipStructure& m, int y, int x) {
  if (!m.has_S()) {
    throw EvalError("mem* needs a declared S");
  }
  return m.in_S(x) && m.edge(y, m.j_inv(x));
}

bool mem_prime(const MembershipStructure& m, int y, int x) {
  return m.edge(y, m.j_inv(m.f_at(x)));
}

// ---------------------------------------------------------------------------
// closure operators and the two lemma recipes

namespace {

// a structure with no f at all counts as element-valued with empty domain
void require_element_f(const MembershipStructure& m, const char* what) {
  if (m.f_mode() == FMode::SetValued) {
    throw EvalError(std::string(what) + " needs an element-valued f");
  }
}

}  // namespace

PairSet upward_set(const MembershipStructure& m, const PairSet& x) {
  require_element_f(m, "upward_set");
  PairSet out;
  const auto& dom = m.f_domain();
  for (std::size_t i = 0; i < dom.size(); ++i) {
    for (std::size_t j = i; j < dom.size(); ++j) {
      int z = dom[i], u = dom[j];
      if (x.count(make_upair(m.f_at(z), m.f_at(u)))) {
        out.insert(make_upair(z, u));
      }
    }
  }
  return out;
}

PairSet downward_set(const MembershipStructure& m, const PairSet& x) {
  require_element_f(m, "downward_set");
  PairSet out;
  for (const auto& p : x) {
    if (!m.f_defined(p.a) || !m.f_defined(p.b)) continue;
    out.insert(make_upair(m.f_at(p.a), m.f_at(p.b)));
  }
  return out;
}

std::vector<int> lemma1_preimage(const MembershipStructure& m,
                                 const std::vector<int>& x) {
  require_element_f(m, "lemma1_preimage");
  // singletons of x as collapsed pairs, pulled up through f, then union
  PairSet singles;
  for (int e : x) singles.insert(make_upair(e, e));
  PairSet up = upward_set(m, singles);
  std::set<int> out;
  for (const auto& p : up) {
    out.insert(p.a);
    out.insert(p.b);
  }
  return {out.begin(), out.end()};
}

std::vector<int> lemma2_image(const MembershipStructure& m,
                              const std::vector<int>& x) {
  require_element_f(m, "lemma2_image");
  PairSet singles;
  for (int e : x) singles.insert(make_upair(e, e));
  PairSet down = downward_set(m, singles);
  std::set<int> out;
  for (const auto& p : down) {
    out.insert(p.a);
    out.insert(p.b);
  }
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// canonical stage structures

MembershipStructure stage_structure(int n, const StageOptions& opts) {
  HFSet stage = v_stage(n);
  MembershipStructure::Data data;
  std::vector<std::uint64_t> codes;
  for (const auto& e : stage.elements()) {
    std::uint64_t c = e.code();
    if (std::find(opts.exclude_codes.begin(), opts.exclude_codes.end(), c) !=
        opts.exclude_codes.end())
      continue;
    codes.push_back(c);
    data.ids.push_back(std::to_string(c));
    data.hf.emplace_back(std::to_string(c), e);
  }
  if (opts.with_f) {
    if (!opts.f_permutation.empty()) {
      for (std::size_t i = 0; i < codes.size(); ++i) {
        std::uint64_t from = codes[i];
        if (from >= opts.f_permutation.size()) continue;
        std::uint64_t to =
            static_cast<std::uint64_t>(opts.f_permutation[static_cast<std::size_t>(from)]);
        if (std::find(codes.begin(), codes.end(), to) == codes.end()) continue;
        data.f_elem.emplace_back(std::to_string(from), std::to_string(to));
      }
    } else {
      for (std::uint64_t c : codes) {
        data.f_elem.emplace_back(std::to_string(c), std::to_string(c));
      }
    }
  }
  if (opts.s != StageOptions::SChoice::None) {
    std::vector<std::string> s_ids;
    if (opts.s == StageOptions::SChoice::Full) {
      for (std::uint64_t c : codes) s_ids.push_back(std::to_string(c));
    } else {
      // members of the previous stage
      HFSet lower = v_stage(n - 1);
      for (std::uint64_t c : codes) {
        if (lower.contains(ack_decode(c))) s_ids.push_back(std::to_string(c));
      }
    }
    data.s = std::move(s_ids);
  }
  return MembershipStructure::build(data);
}

}  // namespace strata
