#include "modred/engine.hpp"

#include <algorithm>
#include <set>

namespace modred {

namespace {

// Rethrows internal-construction failures as HardError: by the degreewise
// equivalences, validation of internally built stages can only fail when an
// invariant of the machinery itself is broken.
template <typename Fn>
void must_hold(const char* what, Fn&& fn) {
  try {
    fn();
  } catch (const ValidationError& e) {
    throw HardError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

void SkeletalDiagram::validate(const ReedyStructure& r) const {
  FinCatPtr expect = full_subcategory(r.base, r.objects_up_to_degree(level));
  if (!part.shape || !part.shape->same_structure(*expect))
    throw ValidationError("stage shape is not the degree-<=" + std::to_string(level) +
                          " full subcategory of " + r.base->name());
  part.validate();
}

SkeletalDiagram empty_skeleton(const ReedyStructure& r, const AmbientPtr& ambient) {
  SkeletalDiagram out;
  out.part.shape = full_subcategory(r.base, {});
  out.part.ambient = ambient;
  out.level = -1;
  return out;
}

SkeletalDiagram skeleton(const ReedyStructure& r, const Diagram& x, int level) {
  SkeletalDiagram out;
  out.level = level;
  out.part.shape = full_subcategory(r.base, r.objects_up_to_degree(level));
  out.part.ambient = x.ambient;
  for (const auto& o : out.part.shape->objects()) out.part.data.entries[o] = x.at(o);
  for (const auto& mid : out.part.shape->nonidentity_morphisms())
    out.part.data.edges[mid] = x.edge(mid);
  return out;
}

DegreeData degree_data(const ReedyStructure& r, const SkeletalDiagram& xhat,
                       const std::string& alpha) {
  DegreeData out;
  out.lat = latching_data(r, xhat.part, alpha);
  out.mat = matching_data(r, xhat.part, alpha);

  // One cone leg per matching index: out of the latching colimit by the
  // composites through the stage (both endpoints lie below alpha).
  std::map<std::string, std::string> legs;
  for (const auto& low : out.mat.cat.cat->objects()) {
    const std::string& target = out.mat.cat.forget.obj_map.at(low);
    std::map<std::string, std::string> colegs;
    for (const auto& high : out.lat.cat.cat->objects())
      colegs[high] = xhat.part.edge(r.base->compose(low, high));
    legs[low] = out.lat.colim.induce(colegs, xhat.part.at(target));
  }
  out.canonical = out.mat.lim.induce(legs, out.lat.colim.apex);
  return out;
}

SkeletalDiagram extend_object(const ReedyStructure& r, const SkeletalDiagram& xhat,
                              const std::map<std::string, Factorization>& choices) {
  const AmbientModel& m = *xhat.part.ambient;
  const int n = xhat.level + 1;
  std::vector<std::string> fresh = r.objects_of_degree(n);

  std::map<std::string, DegreeData> data;
  for (const auto& alpha : fresh) {
    auto it = choices.find(alpha);
    if (it == choices.end())
      throw ValidationError("no factorization choice for degree-" + std::to_string(n) +
                            " object " + alpha);
    DegreeData dd = degree_data(r, xhat, alpha);
    const Factorization& c = it->second;
    if (!m.valid_object(c.middle) || !m.valid_morphism(c.first) || !m.valid_morphism(c.second) ||
        m.dom(c.first) != dd.lat.colim.apex || m.cod(c.first) != c.middle ||
        m.dom(c.second) != c.middle || m.cod(c.second) != dd.mat.lim.apex)
      throw ValidationError("factorization choice at " + alpha + " has the wrong endpoints");
    if (m.compose(c.second, c.first) != dd.canonical)
      throw ValidationError("factorization choice at " + alpha +
                            " does not compose to the canonical map");
    data.emplace(alpha, std::move(dd));
  }

  SkeletalDiagram out;
  out.level = n;
  out.part.shape = full_subcategory(r.base, r.objects_up_to_degree(n));
  out.part.ambient = xhat.part.ambient;
  out.part.data.entries = xhat.part.data.entries;
  for (const auto& alpha : fresh) out.part.data.entries[alpha] = choices.at(alpha).middle;

  for (const auto& mid : out.part.shape->nonidentity_morphisms()) {
    const std::string& a = out.part.shape->src(mid);
    const std::string& z = out.part.shape->dst(mid);
    if (r.degree_of(a) < n && r.degree_of(z) < n) {
      out.part.data.edges[mid] = xhat.part.edge(mid);
      continue;
    }
    // Forced composite through the unique lowering-then-raising factorization:
    // entry -> matching limit -> stage -> latching colimit -> entry.
    ReedyStructure::TwoStep ts = r.factor(mid);
    std::string cur;  // the partial composite out of the entry at a
    if (!r.base->is_identity(ts.lower)) {
      if (r.degree_of(a) == n)
        cur = m.compose(data.at(a).mat.lim.legs.at(ts.lower), choices.at(a).second);
      else
        cur = xhat.part.edge(ts.lower);
    }
    if (!r.base->is_identity(ts.raise)) {
      std::string fin;
      if (r.degree_of(z) == n)
        fin = m.compose(choices.at(z).first, data.at(z).lat.colim.legs.at(ts.raise));
      else
        fin = xhat.part.edge(ts.raise);
      cur = cur.empty() ? fin : m.compose(fin, cur);
    }
    out.part.data.edges[mid] = cur;
  }

  must_hold("degreewise extension broke functoriality", [&] { out.part.validate(); });
  return out;
}

PushData relative_push(const ReedyStructure& r, const Diagram& src, const Diagram& dst,
                       const std::map<std::string, std::string>& f_below,
                       const std::string& alpha) {
  const AmbientModel& m = *src.ambient;
  PushData out;
  out.lat_src = latching_data(r, src, alpha);
  out.lat_dst = latching_data(r, dst, alpha);
  if (out.lat_src.absolute.empty())
    throw ValidationError("relative pushout needs the source entry at " + alpha);

  std::map<std::string, std::string> legs;
  for (const auto& g : out.lat_src.cat.cat->objects())
    legs[g] =
        m.compose(out.lat_dst.colim.legs.at(g), f_below.at(out.lat_src.cat.forget.obj_map.at(g)));
  out.induced = out.lat_src.colim.induce(legs, out.lat_dst.colim.apex);

  out.push = span_pushout(src.ambient, out.lat_src.colim.apex, src.at(alpha),
                          out.lat_dst.colim.apex, out.lat_src.absolute, out.induced);
  out.apex = out.push.apex;
  out.from_entry = out.push.legs.at("a");
  out.from_latch = out.push.legs.at("b");
  return out;
}

PullData relative_pull(const ReedyStructure& r, const Diagram& src, const Diagram& dst,
                       const std::map<std::string, std::string>& f_below,
                       const std::string& alpha) {
  const AmbientModel& m = *src.ambient;
  PullData out;
  out.mat_src = matching_data(r, src, alpha);
  out.mat_dst = matching_data(r, dst, alpha);
  if (out.mat_dst.absolute.empty())
    throw ValidationError("relative pullback needs the target entry at " + alpha);

  std::map<std::string, std::string> legs;
  for (const auto& g : out.mat_src.cat.cat->objects())
    legs[g] =
        m.compose(f_below.at(out.mat_src.cat.forget.obj_map.at(g)), out.mat_src.lim.legs.at(g));
  out.induced = out.mat_dst.lim.induce(legs, out.mat_src.lim.apex);

  out.pull = cospan_pullback(src.ambient, out.mat_dst.lim.apex, dst.at(alpha),
                             out.mat_src.lim.apex, out.mat_dst.absolute, out.induced);
  out.apex = out.pull.apex;
  out.to_entry = out.pull.legs.at("a");
  out.to_match = out.pull.legs.at("b");
  return out;
}

DiagramMap extend_map(const ReedyStructure& r, const SkeletalDiagram& xn,
                      const SkeletalDiagram& yn,
                      const std::map<std::string, std::string>& f_below,
                      const std::map<std::string, MapSquare>& choices) {
  if (xn.level != yn.level)
    throw ValidationError("map extension needs two stages at the same level");
  const int n = xn.level;
  const AmbientModel& m = *xn.part.ambient;

  // The restricted components must already be natural one level down.
  SkeletalDiagram xprev = skeleton(r, xn.part, n - 1);
  SkeletalDiagram yprev = skeleton(r, yn.part, n - 1);
  DiagramMap below{xprev.part, yprev.part, f_below};
  below.validate();

  std::map<std::string, std::string> comps = f_below;
  for (const auto& alpha : r.objects_of_degree(n)) {
    auto it = choices.find(alpha);
    if (it == choices.end())
      throw ValidationError("no square choice for degree-" + std::to_string(n) + " object " +
                            alpha);
    PushData pd = relative_push(r, xn.part, yn.part, f_below, alpha);
    PullData ld = relative_pull(r, xn.part, yn.part, f_below, alpha);
    const MapSquare& sq = it->second;
    if (!m.valid_morphism(sq.match_part) || !m.valid_morphism(sq.latch_part) ||
        m.dom(sq.match_part) != xn.part.at(alpha) || m.cod(sq.match_part) != ld.apex ||
        m.dom(sq.latch_part) != pd.apex || m.cod(sq.latch_part) != yn.part.at(alpha))
      throw ValidationError("square choice at " + alpha + " has the wrong endpoints");
    std::string via_latch = m.compose(sq.latch_part, pd.from_entry);
    std::string via_match = m.compose(ld.to_entry, sq.match_part);
    if (via_latch != via_match)
      throw ValidationError("extension square does not commute at " + alpha + ": " + via_latch +
                            " != " + via_match);
    comps[alpha] = via_latch;
  }

  DiagramMap out{xn.part, yn.part, comps};
  must_hold("degreewise map extension broke naturality", [&] { out.validate(); });
  return out;
}

// -------- factorization --------

FactorMode factor_mode_from_string(const std::string& s) {
  if (s == "cof_acyfib") return FactorMode::CofThenAcyFib;
  if (s == "acycof_fib") return FactorMode::AcyCofThenFib;
  throw ValidationError("unknown factorization mode '" + s +
                        "' (expected cof_acyfib | acycof_fib)");
}

std::string factor_mode_to_string(FactorMode m) {
  return m == FactorMode::CofThenAcyFib ? "cof_acyfib" : "acycof_fib";
}

FactorResult factorize(const ReedyStructure& r, const std::vector<std::string>& marked,
                       const ModelAssignment& assign, const DiagramMap& g, Side side,
                       FactorMode mode, const Budget& b) {
  if (side == Side::Projective)
    throw ValidationError(
        "the entrywise structure has no degreewise factorization; on monotone increasing "
        "shapes use the colimit-favoring side over the equivalent assignment");
  g.validate();
  if (!g.src.shape->same_structure(*r.base))
    throw ValidationError("map's shape differs from the degree structure's category");

  CheckReport compat = check_compat(r, marked, assign, side, b);
  if (!compat.ok()) {
    for (const auto& it : compat.items)
      if (!it.pass)
        throw ValidationError("class-inclusion compatibility fails: " + it.label +
                              (it.witness.empty() ? "" : " (" + it.witness + ")"));
  }
  std::set<std::string> mk(marked.begin(), marked.end());

  const AmbientModel& m = *g.src.ambient;
  SkeletalDiagram zhat = empty_skeleton(r, g.src.ambient);
  std::map<std::string, std::string> fhat, phat;

  for (int n = 0; n <= r.max_degree(); ++n) {
    std::map<std::string, Factorization> zchoices;
    std::map<std::string, std::string> f_new = fhat, p_new = phat;
    for (const auto& alpha : r.objects_of_degree(n)) {
      PushData pd = relative_push(r, g.src, zhat.part, fhat, alpha);
      PullData ld = relative_pull(r, zhat.part, g.dst, phat, alpha);
      DegreeData dz = degree_data(r, zhat, alpha);

      // Component of the canonical map into the target entry: the factored
      // map on the entry side, the stage's continuation on the latch side.
      ObjectColimitData laty = latching_data(r, g.dst, alpha);
      std::map<std::string, std::string> legs;
      for (const auto& h : pd.lat_dst.cat.cat->objects())
        legs[h] = m.compose(laty.colim.legs.at(h), phat.at(pd.lat_dst.cat.forget.obj_map.at(h)));
      std::string lat_p = pd.lat_dst.colim.induce(legs, laty.colim.apex);
      std::string to_target = pd.push.induce(
          {{"a", g.at(alpha)},
           {"b", m.compose(laty.absolute, lat_p)},
           {"s", m.compose(g.at(alpha), pd.lat_src.absolute)}},
          g.dst.at(alpha));

      // Component into the stage's matching limit: through the source's
      // matching side on the entry, the stage's canonical map on the latch.
      ObjectLimitData matx = matching_data(r, g.src, alpha);
      legs.clear();
      for (const auto& h : ld.mat_src.cat.cat->objects())
        legs[h] = m.compose(fhat.at(ld.mat_src.cat.forget.obj_map.at(h)), matx.lim.legs.at(h));
      std::string mat_f = ld.mat_src.lim.induce(legs, matx.lim.apex);
      std::string to_match = pd.push.induce(
          {{"a", m.compose(mat_f, matx.absolute)},
           {"b", dz.canonical},
           {"s", m.compose(dz.canonical, pd.induced)}},
          ld.mat_src.lim.apex);

      std::string canonical = ld.pull.induce(
          {{"a", to_target},
           {"b", to_match},
           {"c", m.compose(ld.mat_dst.absolute, to_target)}},
          pd.apex);

      // Which weak factorization the side's table prescribes here.
      bool cof_first;
      if (side == Side::Left)
        cof_first = (mode == FactorMode::CofThenAcyFib) && mk.count(alpha) > 0;
      else
        cof_first = (mode == FactorMode::CofThenAcyFib) || mk.count(alpha) == 0;
      const AmbientModel& local = assign.model_at(alpha);
      Factorization fac =
          cof_first ? local.factor_cof_acyfib(canonical) : local.factor_acycof_fib(canonical);

      f_new[alpha] = m.compose(fac.first, pd.from_entry);
      p_new[alpha] = m.compose(ld.to_entry, fac.second);
      zchoices[alpha] = {m.compose(fac.first, pd.from_latch), fac.middle,
                         m.compose(ld.to_match, fac.second)};
    }

    SkeletalDiagram znext;
    must_hold("internally chosen stage factorization was rejected",
              [&] { znext = extend_object(r, zhat, zchoices); });
    SkeletalDiagram xs = skeleton(r, g.src, n), ys = skeleton(r, g.dst, n);
    must_hold("factorization stage is not natural", [&] {
      DiagramMap fs{xs.part, znext.part, f_new};
      fs.validate();
      DiagramMap ps{znext.part, ys.part, p_new};
      ps.validate();
    });
    zhat = znext;
    fhat = f_new;
    phat = p_new;
  }

  FactorResult out;
  out.z = Diagram{g.src.shape, g.src.ambient, zhat.part.data};
  out.f = DiagramMap{g.src, out.z, fhat};
  out.p = DiagramMap{out.z, g.dst, phat};
  must_hold("assembled factorization is invalid", [&] {
    out.z.validate();
    out.f.validate();
    out.p.validate();
  });
  if (compose_maps(out.p, out.f).components != g.components)
    throw HardError("factorization composite differs from the factored map");
  return out;
}

// -------- lifting --------

namespace {

// Static (diagonal-independent) per-object data for the lifting search.
struct LiftStation {
  std::string alpha;
  PushData pd;             // over f: A -> B
  PullData ld;             // over p: X -> Y
  std::string latch_f;     // push apex -> B_alpha
  std::string match_p;     // X_alpha -> pull apex
  ObjectColimitData latx;  // latching of X (with absolute)
  ObjectLimitData matb;    // matching of B (with absolute)
};

}  // namespace

std::optional<DiagramMap> reedy_lift(const ReedyStructure& r, const DiagramMap& f,
                                     const DiagramMap& p, const DiagramMap& top,
                                     const DiagramMap& bottom, const Budget& b) {
  f.validate();
  p.validate();
  top.validate();
  bottom.validate();
  if (compose_maps(p, top).components != compose_maps(bottom, f).components)
    throw ValidationError("lifting square does not commute");
  if (!f.src.shape->same_structure(*r.base))
    throw ValidationError("square's shape differs from the degree structure's category");

  const AmbientModel& m = *f.src.ambient;
  const Diagram& B = f.dst;
  const Diagram& X = p.src;

  // Objects ordered by degree, then name: each station only depends on the
  // diagonal's components strictly below its degree.
  std::vector<std::string> order;
  for (int n = 0; n <= r.max_degree(); ++n)
    for (const auto& alpha : r.objects_of_degree(n)) order.push_back(alpha);

  std::vector<LiftStation> st;
  st.reserve(order.size());
  for (const auto& alpha : order) {
    LiftStation s;
    s.alpha = alpha;
    s.pd = relative_push(r, f.src, f.dst, f.components, alpha);
    s.ld = relative_pull(r, p.src, p.dst, p.components, alpha);
    s.latch_f = s.pd.push.induce({{"a", f.at(alpha)},
                                  {"b", s.pd.lat_dst.absolute},
                                  {"s", m.compose(f.at(alpha), s.pd.lat_src.absolute)}},
                                 B.at(alpha));
    s.match_p = s.ld.pull.induce({{"a", p.at(alpha)},
                                  {"b", s.ld.mat_src.absolute},
                                  {"c", m.compose(s.ld.mat_dst.absolute, p.at(alpha))}},
                                 X.at(alpha));
    s.latx = latching_data(r, X, alpha);
    s.matb = matching_data(r, B, alpha);
    st.push_back(std::move(s));
  }

  long attempts = 0;
  std::map<std::string, std::string> k;

  // Candidates at one station under the current partial diagonal.
  auto candidates = [&](const LiftStation& s) {
    std::map<std::string, std::string> legs;
    for (const auto& h : s.pd.lat_dst.cat.cat->objects())
      legs[h] = m.compose(s.latx.colim.legs.at(h), k.at(s.pd.lat_dst.cat.forget.obj_map.at(h)));
    std::string lat_k = s.pd.lat_dst.colim.induce(legs, s.latx.colim.apex);
    std::string top_edge = s.pd.push.induce(
        {{"a", top.at(s.alpha)},
         {"b", m.compose(s.latx.absolute, lat_k)},
         {"s", m.compose(top.at(s.alpha), s.pd.lat_src.absolute)}},
        X.at(s.alpha));

    legs.clear();
    for (const auto& h : s.ld.mat_src.cat.cat->objects())
      legs[h] = m.compose(k.at(s.ld.mat_src.cat.forget.obj_map.at(h)), s.matb.lim.legs.at(h));
    std::string mat_k = s.ld.mat_src.lim.induce(legs, s.matb.lim.apex);
    std::string bottom_edge = s.ld.pull.induce(
        {{"a", bottom.at(s.alpha)},
         {"b", m.compose(mat_k, s.matb.absolute)},
         {"c", m.compose(s.ld.mat_dst.absolute, bottom.at(s.alpha))}},
        B.at(s.alpha));

    if (m.compose(s.match_p, top_edge) != m.compose(bottom_edge, s.latch_f))
      throw HardError("induced lifting square does not commute at " + s.alpha);

    std::vector<std::string> out;
    for (const auto& h : m.enum_homs(B.at(s.alpha), X.at(s.alpha), b)) {
      if (++attempts > b.max_search)
        throw BudgetExceeded("lifting search cut off after " + std::to_string(attempts - 1) +
                             " candidates");
      if (m.compose(h, s.latch_f) == top_edge && m.compose(s.match_p, h) == bottom_edge)
        out.push_back(h);
    }
    return out;
  };

  // Depth-first over stations with full backtracking across degrees.
  std::vector<std::vector<std::string>> options(st.size());
  std::vector<size_t> pick(st.size(), 0);
  size_t i = 0;
  while (true) {
    if (i == st.size()) break;  // complete diagonal
    if (pick[i] == 0) options[i] = candidates(st[i]);
    if (pick[i] < options[i].size()) {
      k[st[i].alpha] = options[i][pick[i]];
      ++pick[i];
      ++i;
      if (i < st.size()) pick[i] = 0;
    } else {
      if (i == 0) return std::nullopt;  // exhaustively refuted
      k.erase(st[i].alpha);
      pick[i] = 0;
      --i;
      k.erase(st[i].alpha);
    }
  }

  DiagramMap out{B, X, k};
  must_hold("assembled diagonal is not natural", [&] { out.validate(); });
  if (compose_maps(out, f).components != top.components ||
      compose_maps(p, out).components != bottom.components)
    throw HardError("assembled diagonal fails a triangle");
  return out;
}

// -------- replacement --------

ReplacementResult replacement(const ReedyStructure& r, const std::vector<std::string>& marked,
                              const ModelAssignment& assign, const Diagram& x,
                              ReplacementKind kind, Side side, const Budget& b) {
  ReplacementResult out;
  if (kind == ReplacementKind::Fibrant) {
    out.via = factorize(r, marked, assign, map_to_final(x), side, FactorMode::AcyCofThenFib, b);
    out.map = out.via.f;
  } else {
    out.via = factorize(r, marked, assign, map_from_initial(x), side, FactorMode::CofThenAcyFib, b);
    out.map = out.via.p;
  }
  out.object = out.via.z;
  return out;
}

}  // namespace modred
