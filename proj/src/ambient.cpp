#include "modred/ambient.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace modred {

void validate_shape_diagram(const AmbientModel& m, const FinCatPtr& shape,
                            const ShapeDiagramData& d) {
  for (const auto& o : shape->objects()) {
    auto it = d.entries.find(o);
    if (it == d.entries.end())
      throw ValidationError("diagram misses entry at '" + o + "'");
    if (!m.valid_object(it->second))
      throw ValidationError("diagram entry at '" + o + "' is not a " + m.name() + " object: " +
                            it->second);
  }
  for (const auto& [o, e] : d.entries)
    if (!shape->has_object(o))
      throw ValidationError("diagram entry at unknown shape object '" + o + "'");
  for (const auto& mid : shape->nonidentity_morphisms()) {
    auto it = d.edges.find(mid);
    if (it == d.edges.end())
      throw ValidationError("diagram misses edge at '" + mid + "'");
    const std::string& f = it->second;
    if (!m.valid_morphism(f))
      throw ValidationError("diagram edge at '" + mid + "' is not a " + m.name() +
                            " morphism: " + f);
    if (m.dom(f) != d.entries.at(shape->src(mid)) || m.cod(f) != d.entries.at(shape->dst(mid)))
      throw ValidationError("diagram edge at '" + mid + "' has wrong endpoints");
  }
  for (const auto& [mid, f] : d.edges) {
    if (!shape->has_morphism(mid))
      throw ValidationError("diagram edge at unknown shape morphism '" + mid + "'");
    (void)f;
  }
  for (const auto& f : shape->nonidentity_morphisms())
    for (const auto& g : shape->nonidentity_morphisms()) {
      if (shape->dst(f) != shape->src(g)) continue;
      const std::string& gf = shape->compose(g, f);
      std::string lhs = edge_of(m, shape, d, gf);
      std::string rhs = m.compose(d.edges.at(g), d.edges.at(f));
      if (lhs != rhs)
        throw ValidationError("diagram breaks functoriality at " + g + " after " + f + ": " +
                              rhs + " != " + lhs);
    }
}

std::string edge_of(const AmbientModel& m, const FinCatPtr& shape, const ShapeDiagramData& d,
                    const std::string& shape_mor) {
  if (shape->is_identity(shape_mor))
    return m.identity(d.entries.at(shape->src(shape_mor)));
  return d.edges.at(shape_mor);
}

Variant variant_from_string(const std::string& s) {
  if (s == "full") return Variant::Full;
  if (s == "cof-trivial") return Variant::CofTrivial;
  if (s == "we-iso") return Variant::WeIso;
  throw ValidationError("unknown structure variant '" + s +
                        "' (expected full | cof-trivial | we-iso)");
}

std::string variant_to_string(Variant v) {
  switch (v) {
    case Variant::Full: return "full";
    case Variant::CofTrivial: return "cof-trivial";
    case Variant::WeIso: return "we-iso";
  }
  throw HardError("unreachable variant");
}

namespace {

// The lopsided structures share the carrier and override only the classes,
// the factorization oracles, and the generating sets.
class TrivialWrap : public AmbientModel {
 public:
  TrivialWrap(AmbientPtr base, Variant kind) : base_(std::move(base)), kind_(kind) {
    if (kind_ == Variant::Full)
      throw ValidationError("trivial_structure expects cof-trivial or we-iso");
  }

  std::string name() const override {
    return base_->name() + "+" + variant_to_string(kind_);
  }
  bool valid_object(const std::string& x) const override { return base_->valid_object(x); }
  bool valid_morphism(const std::string& f) const override { return base_->valid_morphism(f); }
  std::string dom(const std::string& f) const override { return base_->dom(f); }
  std::string cod(const std::string& f) const override { return base_->cod(f); }
  std::string identity(const std::string& x) const override { return base_->identity(x); }
  std::string compose(const std::string& g, const std::string& f) const override {
    return base_->compose(g, f);
  }
  std::string initial_object() const override { return base_->initial_object(); }
  std::string final_object() const override { return base_->final_object(); }
  std::string from_initial(const std::string& x) const override { return base_->from_initial(x); }
  std::string to_final(const std::string& x) const override { return base_->to_final(x); }
  ColimitResult colimit(const FinCatPtr& s, const ShapeDiagramData& d) const override {
    return base_->colimit(s, d);
  }
  LimitResult limit(const FinCatPtr& s, const ShapeDiagramData& d) const override {
    return base_->limit(s, d);
  }

  bool is_cof(const std::string& f) const override {
    return kind_ == Variant::CofTrivial ? base_->is_iso(f) : true;
  }
  bool is_fib(const std::string&) const override { return true; }
  bool is_we(const std::string& f) const override {
    return kind_ == Variant::WeIso ? base_->is_iso(f) : true;
  }
  bool is_iso(const std::string& f) const override { return base_->is_iso(f); }

  Factorization factor_cof_acyfib(const std::string& f) const override {
    if (kind_ == Variant::CofTrivial) {
      std::string d = base_->dom(f);
      return {base_->identity(d), d, f};  // iso then anything
    }
    std::string c = base_->cod(f);
    return {f, c, base_->identity(c)};  // anything then iso
  }
  Factorization factor_acycof_fib(const std::string& f) const override {
    // Acyclic cofibrations are isomorphisms in both kinds; fibrations are
    // everything.
    std::string d = base_->dom(f);
    return {base_->identity(d), d, f};
  }

  std::vector<std::string> enum_objects(const Budget& b) const override {
    return base_->enum_objects(b);
  }
  std::vector<std::string> enum_homs(const std::string& x, const std::string& y,
                                     const Budget& b) const override {
    return base_->enum_homs(x, y, b);
  }

 private:
  AmbientPtr base_;
  Variant kind_;
};

}  // namespace

AmbientPtr trivial_structure(AmbientPtr base, Variant kind) {
  return std::make_shared<TrivialWrap>(std::move(base), kind);
}

ModelAssignment::ModelAssignment(AmbientPtr base) : base_(std::move(base)) {
  cof_trivial_ = trivial_structure(base_, Variant::CofTrivial);
  we_iso_ = trivial_structure(base_, Variant::WeIso);
}

Variant ModelAssignment::variant_at(const std::string& shape_obj) const {
  auto it = variant_.find(shape_obj);
  return it == variant_.end() ? Variant::Full : it->second;
}

const AmbientModel& ModelAssignment::model_at(const std::string& shape_obj) const {
  switch (variant_at(shape_obj)) {
    case Variant::Full: return *base_;
    case Variant::CofTrivial: return *cof_trivial_;
    case Variant::WeIso: return *we_iso_;
  }
  throw HardError("unreachable variant");
}

bool ModelAssignment::constant_full() const {
  for (const auto& [o, v] : variant_)
    if (v != Variant::Full) return false;
  return true;
}

namespace {

// Every commuting square with f on the left and g on the right admits a
// diagonal. Precomputes one composite per hom-set member so the scan over
// squares is pure lookup: a diagonal d fills the square (u, v) exactly when
// (d∘f, g∘d) == (u, v).
bool lift_exists(const AmbientModel& m, const std::string& f, const std::string& g,
                 const std::vector<std::string>& tops, const std::vector<std::string>& bottoms,
                 const std::vector<std::string>& diags) {
  std::set<std::pair<std::string, std::string>> filled;
  for (const auto& d : diags) filled.insert({m.compose(d, f), m.compose(g, d)});
  std::vector<std::string> gu, vf;
  gu.reserve(tops.size());
  vf.reserve(bottoms.size());
  for (const auto& u : tops) gu.push_back(m.compose(g, u));
  for (const auto& v : bottoms) vf.push_back(m.compose(v, f));
  for (size_t i = 0; i < tops.size(); ++i)
    for (size_t j = 0; j < bottoms.size(); ++j) {
      if (gu[i] != vf[j]) continue;  // not a commuting square
      if (!filled.count({tops[i], bottoms[j]})) return false;
    }
  return true;
}

}  // namespace

bool has_lifting_property(const AmbientModel& m, const std::string& f, const std::string& g,
                          const Budget& b) {
  return lift_exists(m, f, g, m.enum_homs(m.dom(f), m.dom(g), b),
                     m.enum_homs(m.cod(f), m.cod(g), b),
                     m.enum_homs(m.cod(f), m.dom(g), b));
}

namespace {

std::vector<std::string> sample_strings(const std::vector<std::string>& v, size_t cap) {
  if (v.size() <= cap) return v;
  std::vector<std::string> out;
  for (size_t i = 0; i < cap; ++i) out.push_back(v[i * v.size() / cap]);
  return out;
}

struct MorInfo {
  std::string f, d, c;
  bool cof = false, fib = false, we = false;
};

std::vector<MorInfo> sample_infos(const std::vector<MorInfo>& v, size_t cap) {
  if (v.size() <= cap) return v;
  std::vector<MorInfo> out;
  for (size_t i = 0; i < cap; ++i) out.push_back(v[i * v.size() / cap]);
  return out;
}

}  // namespace

CheckReport verify_model_axioms(const AmbientModel& m, const Budget& b,
                                const AxiomOptions& opt) {
  CheckReport rep;
  rep.title = "model axioms: " + m.name();

  // Hom-sets get re-read across the quadratic rounds; enumerate each once.
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> hom_cache;
  auto homs = [&](const std::string& x, const std::string& y) -> const std::vector<std::string>& {
    auto key = std::make_pair(x, y);
    auto it = hom_cache.find(key);
    if (it == hom_cache.end()) it = hom_cache.emplace(key, m.enum_homs(x, y, b)).first;
    return it->second;
  };

  auto objs = sample_strings(m.enum_objects(b), 12);
  std::vector<MorInfo> mors;
  for (const auto& x : objs)
    for (const auto& y : objs)
      for (const auto& f : sample_strings(homs(x, y), 12))
        mors.push_back({f, x, y, m.is_cof(f), m.is_fib(f), m.is_we(f)});

  {
    bool ok = true;
    std::string w;
    for (const auto& x : objs) {
      std::string id = m.identity(x);
      if (!(m.is_cof(id) && m.is_fib(id) && m.is_we(id) && m.is_iso(id))) {
        ok = false;
        w = "identity of " + x;
        break;
      }
    }
    rep.add("identities lie in every class", ok, w);
  }

  if (opt.two_of_three) {
    bool ok = true;
    std::string w;
    long checked = 0;
    auto sub = sample_infos(mors, 300);
    for (const auto& f : sub) {
      if (!ok) break;
      for (const auto& g : sub) {
        if (g.d != f.c) continue;
        std::string gf = m.compose(g.f, f.f);
        bool wgf = m.is_we(gf);
        ++checked;
        if ((f.we && g.we && !wgf) || (f.we && wgf && !g.we) || (g.we && wgf && !f.we)) {
          ok = false;
          w = "pair (" + g.f + ", " + f.f + ")";
          break;
        }
      }
    }
    rep.add("weak equivalences satisfy two-of-three (composable pairs checked: " +
                std::to_string(checked) + ")",
            ok, w);
  }

  {
    bool comp_ok = true, class_ok = true;
    std::string wc, wk;
    for (const auto& f : mors) {
      Factorization a = m.factor_cof_acyfib(f.f);
      Factorization c = m.factor_acycof_fib(f.f);
      if (m.compose(a.second, a.first) != f.f || m.compose(c.second, c.first) != f.f ||
          m.cod(a.first) != a.middle || m.dom(a.second) != a.middle) {
        comp_ok = false;
        wc = f.f;
        break;
      }
      if (!(m.is_cof(a.first) && m.is_acyclic_fib(a.second) && m.is_acyclic_cof(c.first) &&
            m.is_fib(c.second))) {
        class_ok = false;
        wk = f.f;
        break;
      }
    }
    rep.add("factorizations recompose to their input", comp_ok, wc);
    rep.add("factorization factors lie in the advertised classes", class_ok, wk);
  }

  {
    bool ok = true;
    std::string w;
    for (const auto& f : mors)
      if (f.cof && f.fib && f.we && !m.is_iso(f.f)) {
        ok = false;
        w = f.f;
        break;
      }
    rep.add("cofibration+fibration+equivalence forces isomorphism", ok, w);
  }

  if (opt.retracts) {
    // Retract closure, capped: f is a retract of g via (i, r) on domains and
    // (j, s) on codomains.
    long work = 0;
    long checked = 0;
    bool ok = true;
    std::string w;
    auto sub = sample_infos(mors, 48);
    for (const auto& f : sub) {
      if (!ok || work > b.max_search) break;
      for (const auto& g : sub) {
        if (!ok || work > b.max_search) break;
        for (const auto& i : sample_strings(homs(f.d, g.d), 4))
          for (const auto& r : sample_strings(homs(g.d, f.d), 4)) {
            ++work;
            if (m.compose(r, i) != m.identity(f.d)) continue;
            for (const auto& j : sample_strings(homs(f.c, g.c), 4))
              for (const auto& s : sample_strings(homs(g.c, f.c), 4)) {
                ++work;
                if (m.compose(s, j) != m.identity(f.c)) continue;
                if (m.compose(g.f, i) != m.compose(j, f.f)) continue;
                if (m.compose(f.f, r) != m.compose(s, g.f)) continue;
                ++checked;
                if ((g.cof && !f.cof) || (g.fib && !f.fib) || (g.we && !f.we)) {
                  ok = false;
                  w = f.f + " retract of " + g.f;
                }
              }
          }
      }
    }
    rep.add("classes closed under retracts (retract squares found: " + std::to_string(checked) +
                ")",
            ok, w);
  }

  if (opt.lifting) {
    long work = 0;
    long pairs = 0;
    bool ok = true;
    std::string w;
    for (int round = 0; round < 2 && ok; ++round) {
      // round 0: (acyclic cof, fib); round 1: (cof, acyclic fib).
      for (const auto& i : mors) {
        if (!ok || work > b.max_search) break;
        bool left_ok = round == 0 ? (i.cof && i.we) : i.cof;
        if (!left_ok) continue;
        for (const auto& p : mors) {
          if (work > b.max_search) break;
          bool right_ok = round == 0 ? p.fib : (p.fib && p.we);
          if (!right_ok) continue;
          const auto& tops = homs(i.d, p.d);
          const auto& bottoms = homs(i.c, p.c);
          const auto& diags = homs(i.c, p.d);
          work += long(tops.size()) * long(bottoms.size()) + long(diags.size());
          ++pairs;
          if (!lift_exists(m, i.f, p.f, tops, bottoms, diags)) {
            ok = false;
            w = "(" + i.f + ", " + p.f + ")";
            break;
          }
        }
      }
    }
    rep.add("lifting holds for both class pairs (pairs checked: " + std::to_string(pairs) + ")",
            ok, w);
  }

  if (opt.properness) {
    auto span = FinCategory::build(
        "span", {"l", "r", "s"},
        {{"f_sl", "s", "l"}, {"f_sr", "s", "r"}}, {});
    auto cospan = FinCategory::build(
        "cospan", {"l", "r", "t"},
        {{"f_lt", "l", "t"}, {"f_rt", "r", "t"}}, {});
    long done = 0;
    bool ok = true;
    std::string w;
    for (const auto& i : mors) {
      if (!ok || done >= 24) break;
      if (!m.is_cof(i.f)) continue;
      for (const auto& weq : mors) {
        if (!ok || done >= 24) break;
        if (weq.d != i.d || !m.is_we(weq.f)) continue;
        ShapeDiagramData sd;
        sd.entries = {{"s", i.d}, {"l", i.c}, {"r", weq.c}};
        sd.edges = {{"f_sl", i.f}, {"f_sr", weq.f}};
        ColimitResult po = m.colimit(span, sd);
        ++done;
        if (!m.is_we(po.legs.at("l"))) {
          ok = false;
          w = "pushout of " + weq.f + " along " + i.f;
        }
      }
    }
    for (const auto& p : mors) {
      if (!ok || done >= 48) break;
      if (!m.is_fib(p.f)) continue;
      for (const auto& weq : mors) {
        if (!ok || done >= 48) break;
        if (weq.c != p.c || !m.is_we(weq.f)) continue;
        ShapeDiagramData sd;
        sd.entries = {{"t", p.c}, {"l", p.d}, {"r", weq.d}};
        sd.edges = {{"f_lt", p.f}, {"f_rt", weq.f}};
        LimitResult pb = m.limit(cospan, sd);
        ++done;
        if (!m.is_we(pb.legs.at("l"))) {
          ok = false;
          w = "pullback of " + weq.f + " along " + p.f;
        }
      }
    }
    rep.add("properness on sampled (co)base changes (instances: " + std::to_string(done) + ")",
            ok, w);
  }

  return rep;
}

}  // namespace modred
