#include "modred/diagram.hpp"

#include <algorithm>
#include <set>

namespace modred {

namespace {

std::string join_ids(const std::vector<std::string>& v) { return join(v, ", "); }

// Shared span / cospan shapes for pushouts and pullbacks.
FinCatPtr span_shape() {
  static FinCatPtr c = FinCategory::build(
      "span", {"a", "b", "s"}, {{"l", "s", "a"}, {"r", "s", "b"}}, {});
  return c;
}

FinCatPtr cospan_shape() {
  static FinCatPtr c = FinCategory::build(
      "cospan", {"a", "b", "c"}, {{"l", "a", "c"}, {"r", "b", "c"}}, {});
  return c;
}

// Colimit that tolerates an empty shape (the initial object, with the induced
// map to any target being the unique one from it).
ColimitResult colimit_or_initial(const AmbientPtr& amb, const FinCatPtr& shape,
                                 const ShapeDiagramData& d) {
  if (!shape->objects().empty()) return amb->colimit(shape, d);
  ColimitResult out;
  out.apex = amb->initial_object();
  out.induce = [amb](const std::map<std::string, std::string>&, const std::string& target) {
    return amb->from_initial(target);
  };
  return out;
}

LimitResult limit_or_final(const AmbientPtr& amb, const FinCatPtr& shape,
                           const ShapeDiagramData& d) {
  if (!shape->objects().empty()) return amb->limit(shape, d);
  LimitResult out;
  out.apex = amb->final_object();
  out.induce = [amb](const std::map<std::string, std::string>&, const std::string& source) {
    return amb->to_final(source);
  };
  return out;
}

// The diagram a compiled index category induces from X: entries through the
// forgetful functor's object map, edges through its arrow map.
ShapeDiagramData induced_over(const Diagram& x, const CompiledCat& cc) {
  ShapeDiagramData out;
  for (const auto& o : cc.cat->objects()) out.entries[o] = x.at(cc.forget.obj_map.at(o));
  for (const auto& t : cc.cat->nonidentity_morphisms())
    out.edges[t] = x.edge(cc.forget.mor_map.at(t));
  return out;
}

}  // namespace

// -------- Diagram / DiagramMap --------

void Diagram::validate() const {
  if (!shape) throw ValidationError("diagram without a shape");
  if (!ambient) throw ValidationError("diagram without an ambient category");
  validate_shape_diagram(*ambient, shape, data);
}

const std::string& Diagram::at(const std::string& obj) const {
  auto it = data.entries.find(obj);
  if (it == data.entries.end())
    throw ValidationError("diagram has no entry at " + obj);
  return it->second;
}

std::string Diagram::edge(const std::string& mor) const {
  return edge_of(*ambient, shape, data, mor);
}

void DiagramMap::validate() const {
  src.validate();
  dst.validate();
  if (!src.shape->same_structure(*dst.shape))
    throw ValidationError("map between diagrams over different shapes");
  if (src.ambient->name() != dst.ambient->name())
    throw ValidationError("map between diagrams over different ambient categories");
  const AmbientModel& m = *src.ambient;
  for (const auto& o : src.shape->objects()) {
    auto it = components.find(o);
    if (it == components.end()) throw ValidationError("map missing a component at " + o);
    if (!m.valid_morphism(it->second))
      throw ValidationError("component at " + o + " is not a morphism: " + it->second);
    if (m.dom(it->second) != src.at(o) || m.cod(it->second) != dst.at(o))
      throw ValidationError("component at " + o + " has the wrong endpoints");
  }
  for (const auto& [o, c] : components)
    if (!src.shape->has_object(o))
      throw ValidationError("component at unknown object " + o);
  for (const auto& psi : src.shape->nonidentity_morphisms()) {
    const std::string& a = src.shape->src(psi);
    const std::string& b = src.shape->dst(psi);
    if (m.compose(dst.edge(psi), components.at(a)) !=
        m.compose(components.at(b), src.edge(psi)))
      throw ValidationError("naturality fails at " + psi);
  }
}

const std::string& DiagramMap::at(const std::string& obj) const {
  auto it = components.find(obj);
  if (it == components.end()) throw ValidationError("map has no component at " + obj);
  return it->second;
}

Diagram constant_diagram(const FinCatPtr& shape, const AmbientPtr& ambient,
                         const std::string& value) {
  if (!ambient->valid_object(value))
    throw ValidationError("not an object of " + ambient->name() + ": " + value);
  Diagram out{shape, ambient, {}};
  for (const auto& o : shape->objects()) out.data.entries[o] = value;
  for (const auto& mor : shape->nonidentity_morphisms())
    out.data.edges[mor] = ambient->identity(value);
  return out;
}

DiagramMap identity_map(const Diagram& x) {
  DiagramMap out{x, x, {}};
  for (const auto& o : x.shape->objects()) out.components[o] = x.ambient->identity(x.at(o));
  return out;
}

DiagramMap compose_maps(const DiagramMap& g, const DiagramMap& f) {
  if (f.dst.data.entries != g.src.data.entries || f.dst.data.edges != g.src.data.edges)
    throw ValidationError("compose_maps: middle diagrams differ");
  DiagramMap out{f.src, g.dst, {}};
  for (const auto& o : f.src.shape->objects())
    out.components[o] = f.src.ambient->compose(g.at(o), f.at(o));
  return out;
}

DiagramMap map_from_initial(const Diagram& x) {
  Diagram zero = constant_diagram(x.shape, x.ambient, x.ambient->initial_object());
  DiagramMap out{zero, x, {}};
  for (const auto& o : x.shape->objects()) out.components[o] = x.ambient->from_initial(x.at(o));
  return out;
}

DiagramMap map_to_final(const Diagram& x) {
  Diagram one = constant_diagram(x.shape, x.ambient, x.ambient->final_object());
  DiagramMap out{x, one, {}};
  for (const auto& o : x.shape->objects()) out.components[o] = x.ambient->to_final(x.at(o));
  return out;
}

// -------- enumeration --------

void for_each_diagram(const AmbientModel& m, const FinCatPtr& shape, const Budget& b,
                      const std::function<bool(const ShapeDiagramData&)>& visit,
                      EnumStats& st) {
  const auto& objs = shape->objects();
  std::vector<std::string> entry_options = m.enum_objects(b);
  std::vector<std::string> gens = shape->generating_morphisms();
  auto witnesses = shape->generation_witnesses(gens);
  std::vector<std::string> derived;  // non-identity, non-generator morphisms
  for (const auto& mor : shape->morphisms()) {
    if (shape->is_identity(mor)) continue;
    if (std::find(gens.begin(), gens.end(), mor) == gens.end()) derived.push_back(mor);
  }
  std::vector<std::pair<std::string, std::string>> check_pairs;  // (g, f) composable non-id
  for (const auto& g : shape->nonidentity_morphisms())
    for (const auto& f : shape->nonidentity_morphisms())
      if (shape->src(g) == shape->dst(f)) check_pairs.emplace_back(g, f);

  long attempts = 0;
  bool stop = false;
  ShapeDiagramData data;

  std::function<void(size_t)> pick_gen;
  std::function<void(size_t)> pick_entry;

  auto edge_lookup = [&](const std::string& mor) -> std::string {
    if (shape->is_identity(mor)) return m.identity(data.entries.at(shape->src(mor)));
    return data.edges.at(mor);
  };

  auto finish_candidate = [&]() {
    if (stop) return;
    if (++attempts > b.max_search) {
      st.capped = true;
      stop = true;
      return;
    }
    // Derive the non-generator edges; witness factors resolve in passes.
    for (auto& d : derived) data.edges.erase(d);
    bool progress = true;
    while (progress) {
      progress = false;
      auto ready = [&](const std::string& mor) {
        return shape->is_identity(mor) || data.edges.count(mor) > 0;
      };
      for (const auto& d : derived) {
        if (data.edges.count(d)) continue;
        const auto& w = witnesses.at(d);
        if (!w) continue;  // cannot happen for non-generators
        if (!ready(w->outer) || !ready(w->inner)) continue;
        data.edges[d] = m.compose(edge_lookup(w->outer), edge_lookup(w->inner));
        progress = true;
      }
    }
    // Functoriality of the completed assignment.
    for (const auto& [g, f] : check_pairs) {
      const std::string& gf = shape->compose(g, f);
      std::string lhs = m.compose(edge_lookup(g), edge_lookup(f));
      std::string rhs = edge_lookup(gf);
      if (lhs != rhs) return;  // not a functor; skip
    }
    ++st.checked;
    if (!visit(data)) {
      stop = true;
      return;
    }
    if (st.checked >= b.max_diagrams) {
      st.capped = true;
      stop = true;
    }
  };

  pick_gen = [&](size_t i) {
    if (stop) return;
    if (i == gens.size()) {
      finish_candidate();
      return;
    }
    const std::string& mor = gens[i];
    auto homs =
        m.enum_homs(data.entries.at(shape->src(mor)), data.entries.at(shape->dst(mor)), b);
    for (const auto& h : homs) {
      if (stop) return;
      data.edges[mor] = h;
      pick_gen(i + 1);
    }
    data.edges.erase(mor);
  };

  pick_entry = [&](size_t i) {
    if (stop) return;
    if (i == objs.size()) {
      pick_gen(0);
      return;
    }
    for (const auto& e : entry_options) {
      if (stop) return;
      data.entries[objs[i]] = e;
      pick_entry(i + 1);
    }
    data.entries.erase(objs[i]);
  };

  if (objs.empty()) return;
  pick_entry(0);
}

namespace {

// Componentwise search for natural transformations x -> y whose component at
// each object is drawn from `options` (or the full hom-set when absent).
// Naturality is checked incrementally: whenever the later endpoint of a
// shape morphism receives its component, that square is tested.
void search_maps(const Diagram& x, const Diagram& y, const Budget& b,
                 const std::map<std::string, std::vector<std::string>>* options,
                 const std::function<bool(const std::map<std::string, std::string>&)>& visit,
                 EnumStats& st) {
  const AmbientModel& m = *x.ambient;
  const auto& objs = x.shape->objects();
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < objs.size(); ++i) index[objs[i]] = i;

  // Naturality squares keyed by the later of their two endpoints.
  std::vector<std::vector<std::string>> due(objs.size());
  for (const auto& psi : x.shape->nonidentity_morphisms()) {
    size_t at = std::max(index.at(x.shape->src(psi)), index.at(x.shape->dst(psi)));
    due[at].push_back(psi);
  }

  std::vector<std::vector<std::string>> cands(objs.size());
  for (size_t i = 0; i < objs.size(); ++i) {
    if (options) {
      cands[i] = options->at(objs[i]);
    } else {
      cands[i] = m.enum_homs(x.at(objs[i]), y.at(objs[i]), b);
    }
  }

  long attempts = 0;
  bool stop = false;
  std::map<std::string, std::string> comp;

  std::function<void(size_t)> pick = [&](size_t i) {
    if (stop) return;
    if (i == objs.size()) {
      ++st.checked;
      if (!visit(comp)) {
        stop = true;
        return;
      }
      if (st.checked >= b.max_maps) {
        st.capped = true;
        stop = true;
      }
      return;
    }
    for (const auto& c : cands[i]) {
      if (stop) return;
      if (++attempts > b.max_search) {
        st.capped = true;
        stop = true;
        return;
      }
      comp[objs[i]] = c;
      bool natural = true;
      for (const auto& psi : due[i]) {
        if (m.compose(y.edge(psi), comp.at(x.shape->src(psi))) !=
            m.compose(comp.at(x.shape->dst(psi)), x.edge(psi))) {
          natural = false;
          break;
        }
      }
      if (natural) pick(i + 1);
    }
    comp.erase(objs[i]);
  };

  if (objs.empty()) return;
  pick(0);
}

}  // namespace

void for_each_map(const Diagram& x, const Diagram& y, const Budget& b,
                  const std::function<bool(const std::map<std::string, std::string>&)>& visit,
                  EnumStats& st) {
  search_maps(x, y, b, nullptr, visit, st);
}

std::optional<std::map<std::string, std::string>> find_diagram_lift(
    const DiagramMap& i, const DiagramMap& p, const DiagramMap& f, const DiagramMap& g,
    const Budget& b) {
  const AmbientModel& m = *i.src.ambient;
  const auto& objs = i.src.shape->objects();
  // The square must commute: p ∘ f = g ∘ i.
  for (const auto& o : objs)
    if (m.compose(p.at(o), f.at(o)) != m.compose(g.at(o), i.at(o)))
      throw ValidationError("lifting square does not commute at " + o);

  // Componentwise candidates constrained by both triangles.
  std::map<std::string, std::vector<std::string>> options;
  for (const auto& o : objs) {
    std::vector<std::string> ok;
    for (const auto& h : m.enum_homs(i.dst.at(o), p.src.at(o), b)) {
      if (m.compose(h, i.at(o)) != f.at(o)) continue;
      if (m.compose(p.at(o), h) != g.at(o)) continue;
      ok.push_back(h);
    }
    options[o] = std::move(ok);
  }

  std::optional<std::map<std::string, std::string>> found;
  EnumStats st;
  search_maps(i.dst, p.src, b, &options,
              [&](const std::map<std::string, std::string>& comp) {
                found = comp;
                return false;
              },
              st);
  if (!found && st.capped)
    throw BudgetExceeded("diagonal search cut off before an answer was certain");
  return found;
}

bool diagram_llp(const DiagramMap& i, const DiagramMap& p, const Budget& b, bool* capped) {
  if (capped) *capped = false;
  const AmbientModel& m = *i.src.ambient;
  bool all_lift = true;
  EnumStats fst;
  for_each_map(i.src, p.src, b,
               [&](const std::map<std::string, std::string>& fc) {
                 DiagramMap f{i.src, p.src, fc};
                 // Right legs constrained by the square condition.
                 std::map<std::string, std::vector<std::string>> options;
                 for (const auto& o : i.src.shape->objects()) {
                   std::vector<std::string> ok;
                   for (const auto& h : m.enum_homs(i.dst.at(o), p.dst.at(o), b))
                     if (m.compose(h, i.at(o)) == m.compose(p.at(o), fc.at(o)))
                       ok.push_back(h);
                   options[o] = std::move(ok);
                 }
                 EnumStats gst;
                 bool keep_going = true;
                 search_maps(i.dst, p.dst, b, &options,
                             [&](const std::map<std::string, std::string>& gc) {
                               DiagramMap g{i.dst, p.dst, gc};
                               try {
                                 if (!find_diagram_lift(i, p, f, g, b)) {
                                   all_lift = false;
                                   keep_going = false;
                                   return false;
                                 }
                               } catch (const BudgetExceeded&) {
                                 if (capped) *capped = true;
                               }
                               return true;
                             },
                             gst);
                 if (gst.capped && capped) *capped = true;
                 return keep_going;
               },
               fst);
  if (fst.capped && capped) *capped = true;
  return all_lift;
}

// -------- degreewise data --------

ObjectColimitData latching_data(const ReedyStructure& r, const Diagram& x_diag,
                                const std::string& x) {
  ObjectColimitData out;
  out.cat = latching_category(r, x);
  out.over = induced_over(x_diag, out.cat);
  out.colim = colimit_or_initial(x_diag.ambient, out.cat.cat, out.over);
  if (x_diag.shape->has_object(x)) {
    std::map<std::string, std::string> legs;
    for (const auto& g : out.cat.cat->objects()) legs[g] = x_diag.edge(g);
    out.absolute = out.colim.induce(legs, x_diag.at(x));
  }
  return out;
}

ObjectLimitData matching_data(const ReedyStructure& r, const Diagram& x_diag,
                              const std::string& x) {
  ObjectLimitData out;
  out.cat = matching_category(r, x);
  out.over = induced_over(x_diag, out.cat);
  out.lim = limit_or_final(x_diag.ambient, out.cat.cat, out.over);
  if (x_diag.shape->has_object(x)) {
    std::map<std::string, std::string> legs;
    for (const auto& g : out.cat.cat->objects()) legs[g] = x_diag.edge(g);
    out.absolute = out.lim.induce(legs, x_diag.at(x));
  }
  return out;
}

ColimitResult span_pushout(const AmbientPtr& amb, const std::string& s, const std::string& a,
                           const std::string& b, const std::string& left,
                           const std::string& right) {
  ShapeDiagramData span;
  span.entries = {{"s", s}, {"a", a}, {"b", b}};
  span.edges = {{"l", left}, {"r", right}};
  return amb->colimit(span_shape(), span);
}

LimitResult cospan_pullback(const AmbientPtr& amb, const std::string& c, const std::string& a,
                            const std::string& b, const std::string& left,
                            const std::string& right) {
  ShapeDiagramData cospan;
  cospan.entries = {{"a", a}, {"b", b}, {"c", c}};
  cospan.edges = {{"l", left}, {"r", right}};
  return amb->limit(cospan_shape(), cospan);
}

MapColimitData latching_of_map(const ReedyStructure& r, const DiagramMap& f,
                               const std::string& x) {
  const AmbientModel& m = *f.src.ambient;
  MapColimitData out;
  out.src = latching_data(r, f.src, x);
  out.dst = latching_data(r, f.dst, x);

  std::map<std::string, std::string> legs;
  for (const auto& g : out.src.cat.cat->objects())
    legs[g] = m.compose(out.dst.colim.legs.at(g), f.at(out.src.cat.forget.obj_map.at(g)));
  out.induced = out.src.colim.induce(legs, out.dst.colim.apex);

  if (out.src.absolute.empty() || out.dst.absolute.empty())
    throw ValidationError("relative colimit-side data needs the entry at " + x);

  ShapeDiagramData span;
  span.entries = {{"s", out.src.colim.apex}, {"a", f.src.at(x)}, {"b", out.dst.colim.apex}};
  span.edges = {{"l", out.src.absolute}, {"r", out.induced}};
  ColimitResult po = m.colimit(span_shape(), span);
  out.object = po.apex;
  out.from_entry = po.legs.at("a");
  out.from_latch = po.legs.at("b");
  out.relative = po.induce({{"a", f.at(x)},
                            {"b", out.dst.absolute},
                            {"s", m.compose(f.at(x), out.src.absolute)}},
                           f.dst.at(x));

  if (m.compose(out.relative, out.from_entry) != f.at(x))
    throw HardError("relative colimit-side map does not restrict to the component at " + x);
  if (m.compose(out.relative, out.from_latch) != out.dst.absolute)
    throw HardError("relative colimit-side map does not extend the canonical map at " + x);
  return out;
}

MapLimitData matching_of_map(const ReedyStructure& r, const DiagramMap& f,
                             const std::string& x) {
  const AmbientModel& m = *f.src.ambient;
  MapLimitData out;
  out.src = matching_data(r, f.src, x);
  out.dst = matching_data(r, f.dst, x);

  std::map<std::string, std::string> legs;
  for (const auto& g : out.src.cat.cat->objects())
    legs[g] = m.compose(f.at(out.src.cat.forget.obj_map.at(g)), out.src.lim.legs.at(g));
  out.induced = out.dst.lim.induce(legs, out.src.lim.apex);

  if (out.src.absolute.empty() || out.dst.absolute.empty())
    throw ValidationError("relative limit-side data needs the entry at " + x);

  ShapeDiagramData cospan;
  cospan.entries = {{"a", f.dst.at(x)}, {"b", out.src.lim.apex}, {"c", out.dst.lim.apex}};
  cospan.edges = {{"l", out.dst.absolute}, {"r", out.induced}};
  LimitResult pb = m.limit(cospan_shape(), cospan);
  out.object = pb.apex;
  out.to_entry = pb.legs.at("a");
  out.to_match = pb.legs.at("b");
  out.relative = pb.induce({{"a", f.at(x)},
                            {"b", out.src.absolute},
                            {"c", m.compose(out.dst.absolute, f.at(x))}},
                           f.src.at(x));

  if (m.compose(out.to_entry, out.relative) != f.at(x))
    throw HardError("relative limit-side map does not restrict to the component at " + x);
  if (m.compose(out.to_match, out.relative) != out.src.absolute)
    throw HardError("relative limit-side map does not extend the canonical map at " + x);
  return out;
}

// -------- classification --------

std::string ClassVector::to_string() const {
  auto b01 = [](bool v) { return v ? "1" : "0"; };
  return std::string("we=") + b01(we) + " cof=" + b01(cof) + " fib=" + b01(fib) +
         " acy_cof=" + b01(acy_cof) + " acy_fib=" + b01(acy_fib);
}

namespace {

Classification classify_relative(const ReedyStructure& r, const std::set<std::string>& mk,
                                 const ModelAssignment& assign, const DiagramMap& f,
                                 bool left) {
  Classification out;
  bool we = true, cof = true, fib = true, ac_char = true, af_char = true;
  std::vector<std::string> we_fail, cof_fail, fib_fail, ac_fail, af_fail;

  for (const auto& a : r.base->objects()) {
    const AmbientModel& M = assign.model_at(a);
    bool marked = mk.count(a) > 0;
    const std::string& fa = f.at(a);
    if (marked && !M.is_we(fa)) {
      we = false;
      we_fail.push_back(a + ": " + fa);
    }

    MapColimitData lat = latching_of_map(r, f, a);
    MapLimitData mat = matching_of_map(r, f, a);
    bool rl_cof = M.is_cof(lat.relative);
    bool rl_acy = rl_cof && M.is_we(lat.relative);
    bool rm_fib = M.is_fib(mat.relative);
    bool rm_acy = rm_fib && M.is_we(mat.relative);

    if (left) {
      if (!(marked ? rl_cof : rl_acy)) {
        cof = false;
        cof_fail.push_back(a);
      }
      if (!rm_fib) {
        fib = false;
        fib_fail.push_back(a);
      }
      if (!rl_acy) {
        ac_char = false;
        ac_fail.push_back(a);
      }
      if (!(rm_fib && (!marked || rm_acy))) {
        af_char = false;
        af_fail.push_back(a);
      }
    } else {
      if (!rl_cof) {
        cof = false;
        cof_fail.push_back(a);
      }
      if (!(marked ? rm_fib : rm_acy)) {
        fib = false;
        fib_fail.push_back(a);
      }
      if (!(rl_cof && (!marked || rl_acy))) {
        ac_char = false;
        ac_fail.push_back(a);
      }
      if (!rm_acy) {
        af_char = false;
        af_fail.push_back(a);
      }
    }
  }

  bool ac_def = cof && we;
  bool af_def = fib && we;
  if (ac_def != ac_char)
    throw HardError("acyclic-cofibration routes disagree (definition " +
                    std::to_string(ac_def) + ", characterization " + std::to_string(ac_char) +
                    ")");
  if (af_def != af_char)
    throw HardError("acyclic-fibration routes disagree (definition " + std::to_string(af_def) +
                    ", characterization " + std::to_string(af_char) + ")");

  out.classes = {we, cof, fib, ac_char, af_char};
  out.evidence.add("weak equivalence: entries at marked objects", we, join_ids(we_fail));
  std::string side_cof =
      left ? "relative colimit-side maps are cofibrations (acyclic at unmarked objects)"
           : "relative colimit-side maps are cofibrations";
  std::string side_fib =
      left ? "relative limit-side maps are fibrations"
           : "relative limit-side maps are fibrations (acyclic at unmarked objects)";
  out.evidence.add("cofibration: " + side_cof, cof, join_ids(cof_fail));
  out.evidence.add("fibration: " + side_fib, fib, join_ids(fib_fail));
  out.evidence.add("acyclic cofibration: definitional and relative routes agree", true,
                   ac_char ? "both yes" : "both no");
  out.evidence.add("acyclic fibration: definitional and relative routes agree", true,
                   af_char ? "both yes" : "both no");
  return out;
}

Classification classify_projective(const ReedyStructure& r, const std::set<std::string>& mk,
                                   const std::vector<std::string>& marked,
                                   const ModelAssignment& assign, const DiagramMap& f,
                                   const Budget& b) {
  Classification out;
  bool we = true, fib = true;
  std::vector<std::string> we_fail, fib_fail;
  for (const auto& a : r.base->objects()) {
    if (!mk.count(a)) continue;
    const AmbientModel& M = assign.model_at(a);
    const std::string& fa = f.at(a);
    if (!M.is_we(fa)) {
      we = false;
      we_fail.push_back(a + ": " + fa);
    }
    if (!M.is_fib(fa)) {
      fib = false;
      fib_fail.push_back(a + ": " + fa);
    }
  }
  out.evidence.add("weak equivalence: entries at marked objects", we, join_ids(we_fail));
  out.evidence.add("fibration: entries at marked objects", fib, join_ids(fib_fail));

  bool cof = false, acy_cof = false;
  if (r.monotone_increasing()) {
    // Exact route: the structure agrees with the colimit-favoring structure
    // whose unmarked objects carry the cofibration-trivial variant.
    ModelAssignment eff = assign;
    for (const auto& o : r.base->objects())
      if (!mk.count(o)) eff.set_variant(o, Variant::CofTrivial);
    Classification sub = classify_relative(r, mk, eff, f, /*left=*/true);
    if (sub.classes.we != we || sub.classes.fib != fib ||
        sub.classes.acy_fib != (we && fib))
      throw HardError(
          "projective and equivalent colimit-side classifications disagree on a "
          "monotone increasing shape");
    cof = sub.classes.cof;
    acy_cof = sub.classes.acy_cof;
    out.evidence.add(
        "cofibration: via the equivalent colimit-side structure "
        "(cofibration-trivial off the marked objects)",
        cof, "");
    out.evidence.add("acyclic cofibration: same route, both directions cross-checked",
                     acy_cof, "");
  } else {
    // Budget-capped probe: test the lifting property against enumerated
    // entrywise (acyclic) fibrations. A failed square is a definitive no;
    // an all-pass answer is only as strong as the sample.
    const AmbientPtr& carrier = assign.base();
    bool cof_cap = false, acy_cap = false;
    bool cof_ok = true, acy_ok = true;
    long probes = 0;
    EnumStats dstat;
    for_each_diagram(
        *carrier, r.base, b,
        [&](const ShapeDiagramData& da) {
          Diagram A{r.base, carrier, da};
          EnumStats dstat2;
          for_each_diagram(
              *carrier, r.base, b,
              [&](const ShapeDiagramData& db) {
                Diagram B{r.base, carrier, db};
                EnumStats mstat;
                for_each_map(
                    A, B, b,
                    [&](const std::map<std::string, std::string>& pc) {
                      DiagramMap p{A, B, pc};
                      bool p_fib = true, p_we = true;
                      for (const auto& o : marked) {
                        const AmbientModel& M = assign.model_at(o);
                        p_fib = p_fib && M.is_fib(pc.at(o));
                        p_we = p_we && M.is_we(pc.at(o));
                      }
                      if (!p_fib) return true;
                      ++probes;
                      bool capped = false;
                      bool lifts = diagram_llp(f, p, b, &capped);
                      if (!lifts) {
                        acy_ok = false;
                        if (p_we) cof_ok = false;
                      }
                      if (capped) {
                        acy_cap = true;
                        if (p_we) cof_cap = true;
                      }
                      return probes < b.max_maps;
                    },
                    mstat);
                return probes < b.max_maps;
              },
              dstat2);
          return probes < b.max_maps;
        },
        dstat);
    cof = cof_ok;
    acy_cof = acy_ok;
    std::string qual = " [budget-limited probe, " + std::to_string(probes) + " candidates]";
    out.evidence.add("cofibration: lifting against entrywise acyclic fibrations" +
                         (cof ? qual : ""),
                     cof, cof_cap ? "search capped" : "");
    out.evidence.add("acyclic cofibration: lifting against entrywise fibrations" +
                         (acy_cof ? qual : ""),
                     acy_cof, acy_cap ? "search capped" : "");
  }

  out.classes = {we, cof, fib, acy_cof, we && fib};
  out.evidence.add("acyclic fibration: entrywise at marked objects", we && fib, "");
  return out;
}

}  // namespace

Classification classify(const ReedyStructure& r, const std::vector<std::string>& marked,
                        const ModelAssignment& assign, const DiagramMap& f, Side side,
                        const Budget& b) {
  f.validate();
  if (!f.src.shape->same_structure(*r.base))
    throw ValidationError("map's shape differs from the degree structure's category");
  std::set<std::string> mk;
  for (const auto& o : marked) {
    if (!r.base->has_object(o))
      throw ValidationError("marked object " + o + " is not in " + r.base->name());
    mk.insert(o);
  }

  Classification out;
  if (side == Side::Projective)
    out = classify_projective(r, mk, marked, assign, f, b);
  else
    out = classify_relative(r, mk, assign, f, side == Side::Left);
  out.evidence.title = "classification (" + side_to_string(side) + ", marked {" +
                       join_ids(marked) + "}) over " + r.base->name();
  return out;
}

// -------- free diagrams and generating sets --------

namespace {

struct FreeData {
  Diagram diagram;
  std::map<std::string, ColimitResult> colims;  // shape object -> coproduct data
};

FinCatPtr discrete_shape(const std::string& name, const std::vector<std::string>& objs) {
  return FinCategory::build(name, objs, {}, {});
}

FreeData build_free(const FinCatPtr& shape, const AmbientPtr& ambient,
                    const std::string& at_obj, const std::string& value) {
  if (!shape->has_object(at_obj))
    throw ValidationError("unknown object " + at_obj + " in " + shape->name());
  if (!ambient->valid_object(value))
    throw ValidationError("not an object of " + ambient->name() + ": " + value);

  FreeData out;
  out.diagram.shape = shape;
  out.diagram.ambient = ambient;
  for (const auto& o : shape->objects()) {
    std::vector<std::string> index = shape->hom(at_obj, o);
    FinCatPtr disc = discrete_shape(shape->name() + ":copies:" + at_obj + ":" + o, index);
    ShapeDiagramData dd;
    for (const auto& g : index) dd.entries[g] = value;
    ColimitResult co = colimit_or_initial(ambient, disc, dd);
    out.diagram.data.entries[o] = co.apex;
    out.colims[o] = std::move(co);
  }
  for (const auto& psi : shape->nonidentity_morphisms()) {
    const std::string& a = shape->src(psi);
    const std::string& bb = shape->dst(psi);
    std::vector<std::string> index = shape->hom(at_obj, a);
    if (index.empty()) {
      out.diagram.data.edges[psi] = ambient->from_initial(out.diagram.data.entries.at(bb));
      continue;
    }
    std::map<std::string, std::string> legs;
    for (const auto& g : index) legs[g] = out.colims.at(bb).legs.at(shape->compose(psi, g));
    out.diagram.data.edges[psi] =
        out.colims.at(a).induce(legs, out.diagram.data.entries.at(bb));
  }
  out.diagram.validate();
  return out;
}

}  // namespace

Diagram free_diagram(const FinCatPtr& shape, const AmbientPtr& ambient,
                     const std::string& at_obj, const std::string& value) {
  return build_free(shape, ambient, at_obj, value).diagram;
}

DiagramMap free_map(const FinCatPtr& shape, const AmbientPtr& ambient,
                    const std::string& at_obj, const std::string& value_mor) {
  if (!ambient->valid_morphism(value_mor))
    throw ValidationError("not a morphism of " + ambient->name() + ": " + value_mor);
  FreeData a = build_free(shape, ambient, at_obj, ambient->dom(value_mor));
  FreeData b = build_free(shape, ambient, at_obj, ambient->cod(value_mor));
  DiagramMap out{a.diagram, b.diagram, {}};
  for (const auto& o : shape->objects()) {
    std::vector<std::string> index = shape->hom(at_obj, o);
    if (index.empty()) {
      out.components[o] = ambient->from_initial(b.diagram.at(o));
      continue;
    }
    std::map<std::string, std::string> legs;
    for (const auto& g : index)
      legs[g] = ambient->compose(b.colims.at(o).legs.at(g), value_mor);
    out.components[o] = a.colims.at(o).induce(legs, b.diagram.at(o));
  }
  out.validate();
  return out;
}

GeneratingSets generating_sets(const ReedyStructure& r, const std::vector<std::string>& marked,
                               const AmbientPtr& ambient, Side side, const Budget& b) {
  if (side == Side::Right)
    throw ValidationError(
        "the limit-favoring side has no object-indexed generating description");
  if (!ambient->has_generating_sets())
    throw ValidationError(ambient->name() + " provides no generating sets");
  if (!r.monotone_increasing())
    throw ValidationError("generating sets require a monotone increasing degree structure");
  std::set<std::string> mk;
  for (const auto& o : marked) {
    if (!r.base->has_object(o))
      throw ValidationError("marked object " + o + " is not in " + r.base->name());
    mk.insert(o);
  }

  std::vector<std::string> gen_i = ambient->gen_cofibrations(b);
  std::vector<std::string> gen_j = ambient->gen_acyclic_cofibrations(b);

  GeneratingSets out;
  for (const auto& a : r.base->objects()) {
    bool m = mk.count(a) > 0;
    if (side == Side::Left) {
      for (const auto& i : (m ? gen_i : gen_j))
        out.cofs.push_back(free_map(r.base, ambient, a, i));
      for (const auto& j : gen_j) out.acyclic_cofs.push_back(free_map(r.base, ambient, a, j));
    } else {  // projective
      if (!m) continue;
      for (const auto& i : gen_i) out.cofs.push_back(free_map(r.base, ambient, a, i));
      for (const auto& j : gen_j) out.acyclic_cofs.push_back(free_map(r.base, ambient, a, j));
    }
  }

  bool j_in_i = true;
  for (const auto& j : gen_j)
    if (std::find(gen_i.begin(), gen_i.end(), j) == gen_i.end()) j_in_i = false;
  out.notes.title = "generating sets (" + side_to_string(side) + ", marked {" +
                    join_ids(marked) + "}) over " + r.base->name();
  out.notes.add(std::to_string(out.cofs.size()) + " cofibration generators, " +
                    std::to_string(out.acyclic_cofs.size()) + " acyclic ones",
                true, "");
  out.notes.add("ambient acyclic generators literally among the cofibration generators: " +
                    std::string(j_in_i ? "yes" : "no"),
                true, "");
  return out;
}

// -------- restriction and extension --------

Diagram restrict_diagram(const Diagram& x, const std::vector<std::string>& objs) {
  FinCatPtr sub = full_subcategory(x.shape, objs);
  Diagram out{sub, x.ambient, {}};
  for (const auto& o : sub->objects()) out.data.entries[o] = x.at(o);
  for (const auto& mor : sub->nonidentity_morphisms()) out.data.edges[mor] = x.edge(mor);
  return out;
}

Extension extend_along_inclusion(const Diagram& small, const FinCatPtr& big) {
  const AmbientPtr& amb = small.ambient;
  const AmbientModel& m = *amb;
  std::vector<std::string> subobjs = small.shape->objects();
  FinCatPtr expect = full_subcategory(big, subobjs);
  if (!expect->same_structure(*small.shape))
    throw ValidationError(
        "the small diagram's shape is not the full subcategory of the big one on its "
        "objects");
  std::set<std::string> in_sub(subobjs.begin(), subobjs.end());

  Extension out;
  out.extended.shape = big;
  out.extended.ambient = amb;
  std::map<std::string, ColimitResult> colims;

  for (const auto& c : big->objects()) {
    // The index category of pairs (a, phi : a -> c) with a in the
    // subcategory; objects named by phi.
    std::vector<std::string> objs;
    for (const auto& phi : big->morphisms())
      if (big->dst(phi) == c && in_sub.count(big->src(phi))) objs.push_back(phi);

    std::vector<MorData> mors;
    std::map<std::string, std::string> arrow_psi;
    for (const auto& phi : objs) {
      for (const auto& phi2 : objs) {
        for (const auto& psi : big->hom(big->src(phi), big->src(phi2))) {
          if (big->compose(phi2, psi) != phi) continue;
          if (big->is_identity(psi) && phi == phi2) continue;
          std::string id = "t_" + phi + "_" + psi + "_" + phi2;
          mors.push_back({id, phi, phi2});
          arrow_psi[id] = psi;
        }
      }
    }
    std::vector<ComposeTriple> comp;
    for (const auto& a : mors) {
      for (const auto& b2 : mors) {
        if (b2.src != a.dst) continue;
        const std::string& pp = big->compose(arrow_psi.at(b2.id), arrow_psi.at(a.id));
        std::string composite = (big->is_identity(pp) && a.src == b2.dst)
                                    ? FinCategory::identity_id(a.src)
                                    : "t_" + a.src + "_" + pp + "_" + b2.dst;
        comp.push_back({b2.id, a.id, composite});
      }
    }
    FinCatPtr idx = FinCategory::build(big->name() + ":under:" + c, objs, mors, comp);

    ShapeDiagramData dd;
    for (const auto& phi : objs) dd.entries[phi] = small.at(big->src(phi));
    for (const auto& t : idx->nonidentity_morphisms()) dd.edges[t] = small.edge(arrow_psi.at(t));
    ColimitResult co = colimit_or_initial(amb, idx, dd);
    out.extended.data.entries[c] = co.apex;
    colims[c] = std::move(co);
  }

  for (const auto& chi : big->nonidentity_morphisms()) {
    const std::string& c = big->src(chi);
    const std::string& c2 = big->dst(chi);
    const ColimitResult& co = colims.at(c);
    if (co.legs.empty()) {
      out.extended.data.edges[chi] = m.from_initial(out.extended.data.entries.at(c2));
      continue;
    }
    std::map<std::string, std::string> legs;
    for (const auto& [phi, leg] : co.legs)
      legs[phi] = colims.at(c2).legs.at(big->compose(chi, phi));
    out.extended.data.edges[chi] = co.induce(legs, out.extended.data.entries.at(c2));
  }

  for (const auto& a : subobjs)
    out.unit[a] = colims.at(a).legs.at(FinCategory::identity_id(a));

  out.extended.validate();
  return out;
}

CheckReport check_extension_unit(const Diagram& small, const FinCatPtr& big) {
  Extension ext = extend_along_inclusion(small, big);
  const AmbientModel& m = *small.ambient;
  CheckReport rep{"pointwise extension along a full inclusion into " + big->name()};
  std::vector<std::string> bad;
  for (const auto& [a, u] : ext.unit)
    if (!m.is_iso(u)) bad.push_back(a + ": " + u);
  rep.add("the comparison at every subcategory object is invertible", bad.empty(),
          join_ids(bad));
  return rep;
}

// -------- level-zero right extension --------

namespace {

LimitResult power_limit(const AmbientPtr& amb, const std::string& value, int copies) {
  std::vector<std::string> objs;
  for (int i = 0; i < copies; ++i) objs.push_back("k" + std::to_string(i));
  FinCatPtr disc = discrete_shape("power:" + std::to_string(copies), objs);
  ShapeDiagramData dd;
  for (const auto& o : objs) dd.entries[o] = value;
  return amb->limit(disc, dd);
}

}  // namespace

Diagram r_zero(const AmbientPtr& ambient, const std::string& value, int levels) {
  if (!ambient->valid_object(value))
    throw ValidationError("not an object of " + ambient->name() + ": " + value);
  FinCatPtr shape = truncated_simplex_op(levels);
  Diagram out{shape, ambient, {}};
  std::map<int, LimitResult> lims;
  for (int n = 0; n <= levels; ++n) {
    lims[n] = power_limit(ambient, value, n + 1);
    out.data.entries["[" + std::to_string(n) + "]"] = lims[n].apex;
  }
  for (const auto& psi : shape->nonidentity_morphisms()) {
    SimplexOpMor s = simplex_op_decode(psi);
    std::map<std::string, std::string> legs;
    for (int j = 0; j <= s.dst_level; ++j)
      legs["k" + std::to_string(j)] =
          lims.at(s.src_level).legs.at("k" + std::to_string(s.values[size_t(j)]));
    out.data.edges[psi] = lims.at(s.dst_level).induce(legs, lims.at(s.src_level).apex);
  }
  out.validate();
  return out;
}

std::string r_zero_counit(const AmbientPtr& ambient, const std::string& value) {
  return power_limit(ambient, value, 1).legs.at("k0");
}

}  // namespace modred
