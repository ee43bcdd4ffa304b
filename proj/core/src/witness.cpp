#include "strata/witness.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "strata/errors.hpp"

namespace strata {

namespace {

// Per-input recipe failures travel as exceptions inside the session and are
// converted into outcome fields at the boundary.
struct RecipeFail {
  std::string kind;
  std::string step;
};

std::string render_elems(const MembershipStructure& m, const std::set<int>& s) {
  std::string out = "{";
  bool first = true;
  for (int x : s) {
    if (!first) out += ", ";
    first = false;
    out += m.id_of(x);
  }
  return out + "}";
}

std::string render_pairs(const MembershipStructure& m, const PairSet& ps) {
  std::string out = "{";
  bool first = true;
  for (const auto& p : ps) {
    if (!first) out += ", ";
    first = false;
    if (p.a == p.b) {
      out += "{" + m.id_of(p.a) + "}";
    } else {
      out += "{" + m.id_of(p.a) + ", " + m.id_of(p.b) + "}";
    }
  }
  return out + "}";
}

}  // namespace

struct WitnessSession::Impl {
  const MembershipStructure& m;
  std::map<std::pair<AxiomId, RelSym>, Evaluator> matrices;
  std::map<AxiomId, AxiomShape> shapes;

  explicit Impl(const MembershipStructure& mm) : m(mm) {}

  const AxiomShape& shape(AxiomId id) {
    auto it = shapes.find(id);
    if (it == shapes.end()) {
      it = shapes.emplace(id, axiom_shape(builtin_axiom(id))).first;
    }
    return it->second;
  }

  Evaluator& matrix(AxiomId id, RelSym flavor) {
    auto key = std::make_pair(id, flavor);
    auto it = matrices.find(key);
    if (it == matrices.end()) {
      it = matrices.emplace(key, Evaluator(m, shape(id).matrix, flavor)).first;
    }
    return it->second;
  }

  // --- primitive steps -----------------------------------------------------

  std::set<int> eext(int x) {
    auto v = m.extension(x);
    return {v.begin(), v.end()};
  }

  std::set<int> prime_ext(int x, const std::string& step) {
    if (!m.f_defined(x)) throw RecipeFail{"undefined-f", step};
    return eext(m.j_inv(m.f_at(x)));
  }

  std::set<int> star_ext(int x) {
    if (!m.has_S()) throw EvalError("mem* needs a declared S");
    if (!m.in_S(x)) return {};
    return eext(m.j_inv(x));
  }

  int code_of(const std::set<int>& ext, const std::string& step) {
    auto c = m.code_of(std::vector<int>(ext.begin(), ext.end()));
    if (!c) throw RecipeFail{"missing-code", step};
    return *c;
  }

  // element whose mem*-extension is `ext`; j(code) must land in S
  int star_code_of(const std::set<int>& ext, const std::string& step) {
    int c = code_of(ext, step);
    int e = m.j_of(c);
    if (!m.has_S() || !m.in_S(e)) {
      throw RecipeFail{"missing-code", step + " (code not in S)"};
    }
    return e;
  }

  int f_at(int x, const std::string& step) {
    if (!m.f_defined(x)) throw RecipeFail{"undefined-f", step};
    return m.f_at(x);
  }

  int f_inv(int y, const std::string& step) {
    auto x = m.f_inverse(y);
    if (!x) throw RecipeFail{"outside-range", step};
    return *x;
  }

  // images along f and f^-1 skip unmapped elements
  std::set<int> f_image(const std::set<int>& s) {
    std::set<int> out;
    for (int x : s) {
      if (m.f_defined(x)) out.insert(m.f_at(x));
    }
    return out;
  }

  std::set<int> f_preimage(const std::set<int>& s) {
    std::set<int> out;
    for (int x : m.f_domain()) {
      if (s.count(m.f_at(x))) out.insert(x);
    }
    return out;
  }

  // reads an extension of size 1 or 2 as an unordered pair
  std::optional<UPair> as_pair(const std::set<int>& ext) {
    if (ext.size() == 1) return make_upair(*ext.begin(), *ext.begin());
    if (ext.size() == 2) {
      auto it = ext.begin();
      int a = *it++;
      return make_upair(a, *it);
    }
    return std::nullopt;
  }

  PairSet compose_pairs(const PairSet& a, const PairSet& b) {
    auto orient = [](const PairSet& ps) {
      std::vector<std::pair<int, int>> out;
      for (const auto& p : ps) {
        out.emplace_back(p.a, p.b);
        if (p.a != p.b) out.emplace_back(p.b, p.a);
      }
      return out;
    };
    PairSet out;
    for (const auto& [x, y] : orient(a)) {
      for (const auto& [y2, z] : orient(b)) {
        if (y == y2) out.insert(make_upair(x, z));
      }
    }
    return out;
  }

  bool validate(AxiomId id, RelSym flavor, const std::vector<int>& inputs,
                int witness, WitnessOutcome& out) {
    const AxiomShape& sh = shape(id);
    Assignment asg;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      asg[sh.universals[i]] = inputs[i];
    }
    asg[sh.witness_var] = witness;
    try {
      return matrix(id, flavor).evaluate(asg);
    } catch (const Error& e) {
      out.failure = std::string("validation error: ") + e.what();
      return false;
    }
  }
};

WitnessSession::WitnessSession(const MembershipStructure& m)
    : m_(m), impl_(std::make_unique<Impl>(m)) {}
WitnessSession::~WitnessSession() = default;

namespace {

void require_element_f(const MembershipStructure& m) {
  if (m.f_mode() != FMode::Element) {
    throw EvalError("witness recipes need an element-valued f");
  }
}

WitnessOutcome run_recipe(AxiomId id, RecipeFamily family,
                          std::vector<int> inputs,
                          const std::function<int(WitnessOutcome&)>& body) {
  WitnessOutcome out;
  out.axiom = id;
  out.family = family;
  out.inputs = std::move(inputs);
  try {
    out.witness = body(out);
  } catch (const RecipeFail& f) {
    out.failure_kind = f.kind;
    out.failure = f.kind + " at step '" + f.step + "'";
  } catch (const ValidationError& e) {
    // ambiguous extension scans surface as recipe failures, not crashes
    out.failure_kind = e.code();
    out.failure = e.what();
  }
  return out;
}

}  // namespace

WitnessOutcome WitnessSession::complement(int x) {
  require_element_f(m_);
  auto& I = *impl_;
  return run_recipe(
      AxiomId::Complements, RecipeFamily::Prime, {x},
      [&](WitnessOutcome& out) {
        int fx = I.f_at(x, "f(x)");
        out.trace.push_back({"f(x)", m_.id_of(fx)});
        std::set<int> k = I.eext(m_.j_inv(fx));
        out.trace.push_back({"k", render_elems(m_, k)});
        // complement within the designated universe: S when declared,
        // otherwise the whole domain
        std::set<int> universe;
        if (m_.has_S()) {
          auto s = m_.s_elements();
          universe.insert(s.begin(), s.end());
        } else {
          for (int i = 0; i < m_.size(); ++i) universe.insert(i);
        }
        std::set<int> kc;
        for (int e : universe) {
          if (!k.count(e)) kc.insert(e);
        }
        out.trace.push_back({"k^c", render_elems(m_, kc)});
        int c = I.code_of(kc, "code of k^c");
        out.trace.push_back({"code(k^c)", m_.id_of(c)});
        int jc = m_.j_of(c);
        out.trace.push_back({"j(code(k^c))", m_.id_of(jc)});
        int w = I.f_inv(jc, "f^-1(j(code(k^c)))");
        out.trace.push_back({"witness", m_.id_of(w)});
        out.validated = I.validate(AxiomId::Complements, RelSym::MemPrime, {x},
                                   w, out);
        return w;
      });
}

WitnessOutcome WitnessSession::pair(int a, int b) {
  require_element_f(m_);
  auto& I = *impl_;
  return run_recipe(
      AxiomId::Pairing, RecipeFamily::Prime, {a, b},
      [&](WitnessOutcome& out) {
        std::set<int> t{a, b};
        out.trace.push_back({"{a,b}", render_elems(m_, t)});
        int c = I.code_of(t, "code of {a,b}");
        out.trace.push_back({"code({a,b})", m_.id_of(c)});
        int jc = m_.j_of(c);
        out.trace.push_back({"j(code)", m_.id_of(jc)});
        int w = I.f_inv(jc, "f^-1(j(code))");
        out.trace.push_back({"witness", m_.id_of(w)});
        out.validated =
            I.validate(AxiomId::Pairing, RelSym::MemPrime, {a, b}, w, out);
        return w;
      });
}

WitnessOutcome WitnessSession::set_union(int x, RecipeFamily family) {
  require_element_f(m_);
  auto& I = *impl_;
  if (family == RecipeFamily::Star) {
    return run_recipe(
        AxiomId::SetUnion, family, {x},
        [&](WitnessOutcome& out) {
          int a = I.f_inv(x, "f^-1(x)");
          out.trace.push_back({"f^-1(x)", m_.id_of(a)});
          std::set<int> A = I.eext(a);
          out.trace.push_back({"ext(f^-1(x))", render_elems(m_, A)});
          auto kvec = lemma1_preimage(m_, {A.begin(), A.end()});
          std::set<int> k(kvec.begin(), kvec.end());
          out.trace.push_back({"k", render_elems(m_, k)});
          std::set<int> u;
          for (int e : k) {
            auto ext = I.eext(e);
            u.insert(ext.begin(), ext.end());
          }
          out.trace.push_back({"union(k)", render_elems(m_, u)});
          int c = I.code_of(u, "code of union(k)");
          out.trace.push_back({"code(union(k))", m_.id_of(c)});
          int w = I.f_at(c, "f(code)");
          out.trace.push_back({"witness", m_.id_of(w)});
          out.validated =
              I.validate(AxiomId::SetUnion, RelSym::MemStar, {x}, w, out);
          return w;
        });
  }
  return run_recipe(
      AxiomId::SetUnion, family, {x},
      [&](WitnessOutcome& out) {
        std::set<int> k = I.prime_ext(x, "ext'(x)");
        out.trace.push_back({"x-members", render_elems(m_, k)});
        std::set<int> fk = I.f_image(k);
        out.trace.push_back({"f``x-members", render_elems(m_, fk)});
        int c = I.code_of(fk, "code of f``x-members");
        int jc = m_.j_of(c);
        out.trace.push_back({"j(code(f``x-members))", m_.id_of(jc)});
        // the mem*-union of jc: union of star extensions of its star members
        std::set<int> u;
        for (int w0 : I.star_ext(jc)) {
          auto se = I.star_ext(w0);
          u.insert(se.begin(), se.end());
        }
        out.trace.push_back({"union-extension", render_elems(m_, u)});
        int kstar = I.star_code_of(u, "star-code of union");
        out.trace.push_back({"k", m_.id_of(kstar)});
        int w = I.f_inv(kstar, "f^-1(k)");
        out.trace.push_back({"witness", m_.id_of(w)});
        out.validated =
            I.validate(AxiomId::SetUnion, RelSym::MemPrime, {x}, w, out);
        return w;
      });
}

WitnessOutcome WitnessSession::compose(int x, int y, RecipeFamily family) {
  require_element_f(m_);
  auto& I = *impl_;
  if (family == RecipeFamily::Star) {
    return run_recipe(
        AxiomId::UnorderedComposition, family, {x, y},
        [&](WitnessOutcome& out) {
          int ax = I.f_inv(x, "f^-1(x)");
          int ay = I.f_inv(y, "f^-1(y)");
          out.trace.push_back({"f^-1(x)", m_.id_of(ax)});
          out.trace.push_back({"f^-1(y)", m_.id_of(ay)});
          std::set<int> A2 = I.f_preimage(I.eext(ax));
          std::set<int> B2 = I.f_preimage(I.eext(ay));
          out.trace.push_back({"f^-1``f^-1(x)", render_elems(m_, A2)});
          out.trace.push_back({"f^-1``f^-1(y)", render_elems(m_, B2)});
          auto pairs_of = [&](const std::set<int>& elems) {
            PairSet ps;
            for (int q : elems) {
              if (auto p = I.as_pair(I.eext(q))) ps.insert(*p);
            }
            return ps;
          };
          PairSet K = I.compose_pairs(pairs_of(A2), pairs_of(B2));
          out.trace.push_back({"K", render_pairs(m_, K)});
          std::set<int> k_elems;
          for (const auto& p : K) {
            std::set<int> pair_set{p.a, p.b};
            k_elems.insert(I.code_of(pair_set, "code of a pair of K"));
          }
          out.trace.push_back({"K-elements", render_elems(m_, k_elems)});
          std::set<int> fk = I.f_image(k_elems);
          out.trace.push_back({"f``K", render_elems(m_, fk)});
          int c = I.code_of(fk, "code of f``K");
          int w = I.f_at(c, "f(f``K)");
          out.trace.push_back({"witness", m_.id_of(w)});
          out.validated = I.validate(AxiomId::UnorderedComposition,
                                     RelSym::MemStar, {x, y}, w, out);
          return w;
        });
  }
  return run_recipe(
      AxiomId::UnorderedComposition, family, {x, y},
      [&](WitnessOutcome& out) {
        std::set<int> k = I.prime_ext(x, "k = ext'(x)");
        std::set<int> l = I.prime_ext(y, "l = ext'(y)");  // from y, not x
        out.trace.push_back({"k", render_elems(m_, k)});
        out.trace.push_back({"l", render_elems(m_, l)});
        std::set<int> fk = I.f_image(k);
        std::set<int> fl = I.f_image(l);
        int ck = m_.j_of(I.code_of(fk, "code of f``k"));
        int cl = m_.j_of(I.code_of(fl, "code of f``l"));
        out.trace.push_back({"j(code(f``k))", m_.id_of(ck)});
        out.trace.push_back({"j(code(f``l))", m_.id_of(cl)});
        // mem*-composition of ck, cl
        auto star_pairs = [&](int c) {
          PairSet ps;
          for (int q : I.star_ext(c)) {
            if (auto p = I.as_pair(I.star_ext(q))) ps.insert(*p);
          }
          return ps;
        };
        PairSet comp = I.compose_pairs(star_pairs(ck), star_pairs(cl));
        out.trace.push_back({"composition", render_pairs(m_, comp)});
        std::set<int> q_ext;
        for (const auto& p : comp) {
          std::set<int> pair_set{p.a, p.b};
          q_ext.insert(
              I.star_code_of(pair_set, "star-code of a composed pair"));
        }
        int q = I.star_code_of(q_ext, "q");
        out.trace.push_back({"q", m_.id_of(q)});
        std::set<int> r = I.f_preimage(I.eext(m_.j_inv(q)));
        out.trace.push_back({"r", render_elems(m_, r)});
        int cr = I.code_of(r, "code of r");
        int w = I.f_inv(m_.j_of(cr), "f^-1(j(r))");
        out.trace.push_back({"witness", m_.id_of(w)});
        out.validated = I.validate(AxiomId::UnorderedComposition,
                                   RelSym::MemPrime, {x, y}, w, out);
        return w;
      });
}

WitnessOutcome WitnessSession::intersection_set(RecipeFamily family,
                                                PiVariant variant) {
  require_element_f(m_);
  auto& I = *impl_;
  if (family == RecipeFamily::Star) {
    return run_recipe(
        AxiomId::IntersectionRelationSet, family, {},
        [&](WitnessOutcome& out) {
          // all pairs of intersecting mapped sets
          PairSet pi;
          const auto& dom = m_.f_domain();
          for (std::size_t i = 0; i < dom.size(); ++i) {
            for (std::size_t j = i; j < dom.size(); ++j) {
              std::set<int> a = I.eext(dom[i]);
              std::set<int> b = I.eext(dom[j]);
              bool meet = std::any_of(a.begin(), a.end(),
                                      [&](int e) { return b.count(e) > 0; });
              if (meet) pi.insert(make_upair(dom[i], dom[j]));
            }
          }
          out.trace.push_back({"Pi", render_pairs(m_, pi)});
          PairSet K = downward_set(m_, pi);
          out.trace.push_back({"K", render_pairs(m_, K)});
          std::set<int> k_elems;
          for (const auto& p : K) {
            std::set<int> pair_set{p.a, p.b};
            k_elems.insert(I.code_of(pair_set, "code of a pair of K"));
          }
          std::set<int> fk = I.f_image(k_elems);
          out.trace.push_back({"f``K", render_elems(m_, fk)});
          int c = I.code_of(fk, "code of f``K");
          int w = I.f_at(c, "f(f``K)");
          out.trace.push_back({"witness", m_.id_of(w)});
          out.validated = I.validate(AxiomId::IntersectionRelationSet,
                                     RelSym::MemStar, {}, w, out);
          return w;
        });
  }
  return run_recipe(
      AxiomId::IntersectionRelationSet, family, {},
      [&](WitnessOutcome& out) {
        // mem*-pairs of mem*-intersecting elements
        std::set<int> P;
        for (int p = 0; p < m_.size(); ++p) {
          auto pr = I.as_pair(I.star_ext(p));
          if (!pr) continue;
          std::set<int> a = I.star_ext(pr->a);
          std::set<int> b = I.star_ext(pr->b);
          bool meet = std::any_of(a.begin(), a.end(),
                                  [&](int e) { return b.count(e) > 0; });
          if (meet) P.insert(p);
        }
        out.trace.push_back({"Pi*-extension", render_elems(m_, P)});
        int pi_elem = I.star_code_of(P, "Pi*");
        out.trace.push_back({"Pi*", m_.id_of(pi_elem)});
        int k = m_.j_inv(pi_elem);
        std::set<int> k_set = I.eext(k);
        out.trace.push_back({"k", render_elems(m_, k_set)});
        // I: true pairs {z,u} whose f-images form a pair coded in k
        PairSet ipairs;
        const auto& dom = m_.f_domain();
        for (std::size_t i = 0; i < dom.size(); ++i) {
          for (std::size_t j = i; j < dom.size(); ++j) {
            std::set<int> img{m_.f_at(dom[i]), m_.f_at(dom[j])};
            bool found = std::any_of(k_set.begin(), k_set.end(), [&](int p) {
              return I.eext(p) == img;
            });
            if (found) ipairs.insert(make_upair(dom[i], dom[j]));
          }
        }
        out.trace.push_back({"I", render_pairs(m_, ipairs)});
        std::set<int> i_elems;
        for (const auto& p : ipairs) {
          std::set<int> pair_set{p.a, p.b};
          i_elems.insert(I.code_of(pair_set, "code of a pair of I"));
        }
        int w;
        if (variant == PiVariant::A) {
          // elementwise: X = { f^-1(j(p)) : p in I }, then f^-1(j(code X))
          std::set<int> X;
          for (int p : i_elems) {
            int jp = m_.j_of(p);
            auto inv = m_.f_inverse(jp);
            if (inv) X.insert(*inv);
          }
          out.trace.push_back({"X", render_elems(m_, X)});
          int cx = I.code_of(X, "code of X");
          w = I.f_inv(m_.j_of(cx), "f^-1(j(X))");
        } else {
          // code level: X = f^-1(j(code I)), then f^-1(j(X))
          int ci = I.code_of(i_elems, "code of I");
          int xe = I.f_inv(m_.j_of(ci), "f^-1(j(I))");
          out.trace.push_back({"X", m_.id_of(xe)});
          w = I.f_inv(m_.j_of(xe), "f^-1(j(X))");
        }
        out.trace.push_back({"witness", m_.id_of(w)});
        out.validated = I.validate(AxiomId::IntersectionRelationSet,
                                   RelSym::MemPrime, {}, w, out);
        return w;
      });
}

WitnessOutcome complement_witness(const MembershipStructure& m, int x) {
  return WitnessSession(m).complement(x);
}
WitnessOutcome pair_witness(const MembershipStructure& m, int a, int b) {
  return WitnessSession(m).pair(a, b);
}
WitnessOutcome union_witness(const MembershipStructure& m, int x,
                             RecipeFamily family) {
  return WitnessSession(m).set_union(x, family);
}
WitnessOutcome compose_witness(const MembershipStructure& m, int x, int y,
                               RecipeFamily family) {
  return WitnessSession(m).compose(x, y, family);
}
WitnessOutcome pi_witness(const MembershipStructure& m, RecipeFamily family,
                          PiVariant variant) {
  return WitnessSession(m).intersection_set(family, variant);
}

// ---------------------------------------------------------------------------
// the transposition example

TranspositionReport transposition_example(int stage) {
  if (stage < 2 || stage > 4) {
    throw DomainError("transposition example needs a stage in 2..4");
  }
  StageOptions opts;
  opts.s = StageOptions::SChoice::Full;
  std::size_t count = v_stage(stage).size();
  opts.f_permutation.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    opts.f_permutation[i] = static_cast<int>(i);
  }
  opts.f_permutation[0] = 1;  // swap the codes of {} and {{}}
  opts.f_permutation[1] = 0;
  MembershipStructure m = stage_structure(stage, opts);

  TranspositionReport report;
  report.stage = stage;
  report.automorphism = true;
  auto g = [&](int x) { return m.f_at(x); };
  for (int x = 0; x < m.size() && report.automorphism; ++x) {
    for (int y = 0; y < m.size(); ++y) {
      if (m.edge(x, y) != m.edge(g(x), g(y))) {
        report.automorphism = false;
        report.violation = {x, y};
        report.violation_ids = "(" + m.id_of(x) + ", " + m.id_of(y) + ")";
        break;
      }
    }
  }

  // pair sets over the members of V_min(stage,3)
  int universe_stage = std::min(stage, 3);
  std::vector<int> universe;
  HFSet vu = v_stage(universe_stage);
  for (const auto& e : vu.elements()) {
    universe.push_back(m.index_of(std::to_string(e.code())));
  }
  std::vector<UPair> all_pairs;
  for (std::size_t i = 0; i < universe.size(); ++i) {
    for (std::size_t j = i; j < universe.size(); ++j) {
      all_pairs.push_back(make_upair(universe[i], universe[j]));
    }
  }

  report.upward_agrees = true;
  report.downward_agrees = true;
  report.partition_agrees = true;
  int id0 = m.index_of("0");
  int id1 = m.index_of("1");
  auto touches_swap = [&](const UPair& p) {
    return p.a == id0 || p.a == id1 || p.b == id0 || p.b == id1;
  };

  const std::size_t total = std::size_t{1} << all_pairs.size();
  for (std::size_t mask = 0; mask < total; ++mask) {
    PairSet x;
    for (std::size_t i = 0; i < all_pairs.size(); ++i) {
      if (mask & (std::size_t{1} << i)) x.insert(all_pairs[i]);
    }
    // direct oracles
    PairSet down_oracle, up_oracle;
    for (const auto& p : x) {
      down_oracle.insert(make_upair(g(p.a), g(p.b)));
    }
    for (const auto& p : all_pairs) {
      if (x.count(make_upair(g(p.a), g(p.b)))) up_oracle.insert(p);
    }
    PairSet down = downward_set(m, x);
    PairSet up = upward_set(m, x);
    // upward_set ranges over the full domain; restrict to the universe
    PairSet up_restricted;
    for (const auto& p : up) {
      if (std::count(universe.begin(), universe.end(), p.a) &&
          std::count(universe.begin(), universe.end(), p.b)) {
        up_restricted.insert(p);
      }
    }
    if (down != down_oracle) report.downward_agrees = false;
    if (up_restricted != up_oracle) report.upward_agrees = false;
    // split computation: pairs not touching the swapped codes map
    // identically, the rest through the swap
    PairSet down_split;
    for (const auto& p : x) {
      if (!touches_swap(p)) {
        down_split.insert(p);
      } else {
        down_split.insert(make_upair(g(p.a), g(p.b)));
      }
    }
    if (down_split != down_oracle) report.partition_agrees = false;
    ++report.pair_sets_checked;
  }
  return report;
}

}  // namespace strata
