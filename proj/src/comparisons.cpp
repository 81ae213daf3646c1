#include "modred/comparisons.hpp"

#include <algorithm>
#include <set>

namespace modred {

namespace {

std::string describe_map(const DiagramMap& f) {
  std::vector<std::string> parts;
  for (const auto& [o, c] : f.components) parts.push_back(o + ": " + c);
  return join(parts, "; ");
}

}  // namespace

AmbientFunctor identity_functor(const AmbientPtr& m) {
  return {m, m, [](const std::string& x) { return x; }, [](const std::string& f) { return f; }};
}

CheckReport verify_functor(const AmbientFunctor& f, const Budget& b) {
  CheckReport rep{"functor laws"};
  std::vector<std::string> objs = f.src->enum_objects(b);

  std::string bad;
  long id_checked = 0;
  for (const auto& x : objs) {
    std::string fx = f.on_obj(x);
    if (!f.dst->valid_object(fx)) {
      bad = "object image of " + x + " is not an object: " + fx;
      break;
    }
    if (f.on_mor(f.src->identity(x)) != f.dst->identity(fx)) {
      bad = "identity on " + x + " is not sent to the identity on " + fx;
      break;
    }
    ++id_checked;
  }
  rep.add("objects and identities (" + std::to_string(id_checked) + " objects)", bad.empty(), bad);
  if (!bad.empty()) return rep;

  std::string bad_end;
  long mors = 0;
  for (const auto& x : objs) {
    for (const auto& y : objs) {
      for (const auto& h : f.src->enum_homs(x, y, b)) {
        std::string fh = f.on_mor(h);
        if (!f.dst->valid_morphism(fh) || f.dst->dom(fh) != f.on_obj(x) ||
            f.dst->cod(fh) != f.on_obj(y)) {
          bad_end = "morphism image of " + h + " has the wrong endpoints: " + fh;
          break;
        }
        ++mors;
      }
      if (!bad_end.empty()) break;
    }
    if (!bad_end.empty()) break;
  }
  rep.add("morphism endpoints (" + std::to_string(mors) + " morphisms)", bad_end.empty(), bad_end);
  if (!bad_end.empty()) return rep;

  std::string bad_c;
  long comps = 0;
  bool capped = false;
  for (const auto& x : objs) {
    for (const auto& y : objs) {
      std::vector<std::string> h1 = f.src->enum_homs(x, y, b);
      for (const auto& z : objs) {
        std::vector<std::string> h2 = f.src->enum_homs(y, z, b);
        for (const auto& g : h2) {
          for (const auto& h : h1) {
            if (comps >= b.max_search) {
              capped = true;
              break;
            }
            ++comps;
            if (f.on_mor(f.src->compose(g, h)) != f.dst->compose(f.on_mor(g), f.on_mor(h))) {
              bad_c = "composition broken at (" + g + ") after (" + h + ")";
              break;
            }
          }
          if (!bad_c.empty() || capped) break;
        }
        if (!bad_c.empty() || capped) break;
      }
      if (!bad_c.empty() || capped) break;
    }
    if (!bad_c.empty() || capped) break;
  }
  rep.add("composition preserved (" + std::to_string(comps) + " pairs" +
              (capped ? ", capped" : "") + ")",
          bad_c.empty(), bad_c);
  return rep;
}

AdjointPair identity_adjunction(const AmbientPtr& m) {
  AdjointPair p;
  p.left = identity_functor(m);
  p.right = identity_functor(m);
  p.to_right = [](const std::string&, const std::string&, const std::string& f) { return f; };
  p.to_left = [](const std::string&, const std::string&, const std::string& f) { return f; };
  return p;
}

CheckReport verify_adjoint_pair(const AdjointPair& p, const Budget& b) {
  CheckReport rep{"hom transposition"};
  std::vector<std::string> xs = p.left.src->enum_objects(b);
  std::vector<std::string> ys = p.left.dst->enum_objects(b);

  std::string bad;
  long pairs = 0, total = 0;
  for (const auto& x : xs) {
    for (const auto& y : ys) {
      std::vector<std::string> h1 = p.left.dst->enum_homs(p.left.on_obj(x), y, b);
      std::vector<std::string> h2 = p.left.src->enum_homs(x, p.right.on_obj(y), b);
      std::set<std::string> target(h2.begin(), h2.end());
      std::set<std::string> seen;
      for (const auto& f : h1) {
        std::string g = p.to_right(x, y, f);
        if (!target.count(g)) {
          bad = "transpose of " + f + " at (" + x + ", " + y + ") is not in the other hom-set";
          break;
        }
        if (!seen.insert(g).second) {
          bad = "transpose is not injective at (" + x + ", " + y + ")";
          break;
        }
        if (p.to_left(x, y, g) != f) {
          bad = "transposes are not mutually inverse at " + f;
          break;
        }
      }
      if (bad.empty() && seen.size() != target.size())
        bad = "transpose is not surjective at (" + x + ", " + y + ")";
      if (!bad.empty()) break;
      ++pairs;
      total += long(h1.size());
    }
    if (!bad.empty()) break;
  }
  rep.add("bijection Hom(Lx, y) <-> Hom(x, Ry) (" + std::to_string(pairs) + " object pairs, " +
              std::to_string(total) + " morphisms)",
          bad.empty(), bad);
  return rep;
}

Diagram apply_functor(const AmbientFunctor& f, const Diagram& x) {
  Diagram out;
  out.shape = x.shape;
  out.ambient = f.dst;
  for (const auto& [o, e] : x.data.entries) out.data.entries[o] = f.on_obj(e);
  for (const auto& [mid, e] : x.data.edges) out.data.edges[mid] = f.on_mor(e);
  out.validate();
  return out;
}

DiagramMap apply_functor_map(const AmbientFunctor& f, const DiagramMap& g) {
  DiagramMap out{apply_functor(f, g.src), apply_functor(f, g.dst), {}};
  for (const auto& [o, c] : g.components) out.components[o] = f.on_mor(c);
  out.validate();
  return out;
}

CheckReport check_quillen_prolongation(const AdjointPair& pair, const ReedyStructure& r,
                                       const std::vector<std::string>& marked,
                                       const ModelAssignment& assign_src,
                                       const ModelAssignment& assign_dst, Side side,
                                       const Budget& b) {
  CheckReport rep{"prolonged adjunction"};
  rep.merge(verify_functor(pair.left, b));
  rep.merge(verify_functor(pair.right, b));
  if (!rep.ok()) return rep;
  rep.merge(verify_adjoint_pair(pair, b));
  if (!rep.ok()) return rep;

  std::vector<Diagram> ds;
  EnumStats st;
  for_each_diagram(*pair.left.src, r.base, b,
                   [&](const ShapeDiagramData& d) {
                     ds.push_back(Diagram{r.base, pair.left.src, d});
                     return true;
                   },
                   st);
  bool capped = st.capped;

  long checked = 0, cofs = 0, acys = 0;
  std::string bad_cof, bad_acy;
  for (const auto& x : ds) {
    for (const auto& y : ds) {
      EnumStats ms;
      for_each_map(x, y, b,
                   [&](const std::map<std::string, std::string>& comps) {
                     if (checked >= b.max_maps) {
                       capped = true;
                       return false;
                     }
                     ++checked;
                     DiagramMap f{x, y, comps};
                     Classification cl = classify(r, marked, assign_src, f, side, b);
                     if (cl.classes.cof || cl.classes.acy_cof) {
                       DiagramMap ff = apply_functor_map(pair.left, f);
                       Classification cd = classify(r, marked, assign_dst, ff, side, b);
                       if (cl.classes.cof) {
                         ++cofs;
                         if (!cd.classes.cof && bad_cof.empty()) bad_cof = describe_map(f);
                       }
                       if (cl.classes.acy_cof) {
                         ++acys;
                         if (!cd.classes.acy_cof && bad_acy.empty()) bad_acy = describe_map(f);
                       }
                     }
                     return true;
                   },
                   ms);
      capped |= ms.capped;
      if (checked >= b.max_maps) break;
    }
    if (checked >= b.max_maps) break;
  }
  std::string note = capped ? ", enumeration capped" : "";
  rep.add("prolongation preserves the colimit-side class (" + std::to_string(cofs) + " of " +
              std::to_string(checked) + " maps" + note + ")",
          bad_cof.empty(), bad_cof);
  rep.add("prolongation preserves the acyclic colimit-side class (" + std::to_string(acys) +
              " of " + std::to_string(checked) + " maps" + note + ")",
          bad_acy.empty(), bad_acy);
  return rep;
}

CheckReport check_identity_comparisons(const ReedyStructure& r,
                                       const std::vector<std::string>& marked,
                                       const ModelAssignment& assign, const Budget& b) {
  CheckReport rep{"identity comparisons"};
  const AmbientPtr& amb = assign.base();

  std::vector<Diagram> ds;
  EnumStats st;
  for_each_diagram(*amb, r.base, b,
                   [&](const ShapeDiagramData& d) {
                     ds.push_back(Diagram{r.base, amb, d});
                     return true;
                   },
                   st);
  bool capped = st.capped;
  bool monotone = r.monotone_increasing();

  long checked = 0;
  std::string bad_we, bad_fib, bad_proj;
  std::map<std::string, std::string> bad_drop_we, bad_drop_fib;
  for (const auto& x : ds) {
    for (const auto& y : ds) {
      EnumStats ms;
      for_each_map(x, y, b,
                   [&](const std::map<std::string, std::string>& comps) {
                     if (checked >= b.max_maps) {
                       capped = true;
                       return false;
                     }
                     ++checked;
                     DiagramMap f{x, y, comps};
                     Classification L = classify(r, marked, assign, f, Side::Left, b);
                     Classification R = classify(r, marked, assign, f, Side::Right, b);
                     if (L.classes.we != R.classes.we && bad_we.empty()) bad_we = describe_map(f);
                     if (R.classes.fib && !L.classes.fib && bad_fib.empty())
                       bad_fib = describe_map(f);
                     for (const auto& drop : marked) {
                       std::vector<std::string> sub;
                       for (const auto& o : marked)
                         if (o != drop) sub.push_back(o);
                       Classification S = classify(r, sub, assign, f, Side::Left, b);
                       if (L.classes.we && !S.classes.we && !bad_drop_we.count(drop))
                         bad_drop_we[drop] = describe_map(f);
                       if (S.classes.fib != L.classes.fib && !bad_drop_fib.count(drop))
                         bad_drop_fib[drop] = describe_map(f);
                     }
                     if (monotone) {
                       // The exact agreement pairs the entrywise structure with the
                       // colimit-favoring one whose unmarked objects carry the
                       // cofibration-trivial variant; with everything marked the two
                       // assignments coincide.
                       ModelAssignment eff = assign;
                       for (const auto& o : r.base->objects())
                         if (std::find(marked.begin(), marked.end(), o) == marked.end())
                           eff.set_variant(o, Variant::CofTrivial);
                       Classification P = classify(r, marked, assign, f, Side::Projective, b);
                       Classification LE = classify(r, marked, eff, f, Side::Left, b);
                       if (!(P.classes == LE.classes) && bad_proj.empty())
                         bad_proj = describe_map(f);
                     }
                     return true;
                   },
                   ms);
      capped |= ms.capped;
      if (checked >= b.max_maps) break;
    }
    if (checked >= b.max_maps) break;
  }

  std::string note = std::to_string(checked) + " maps" + (capped ? ", enumeration capped" : "");
  rep.add("weak equivalences agree across the two sides (" + note + ")", bad_we.empty(), bad_we);
  rep.add("limit-favoring fibrations are colimit-favoring fibrations (" + note + ")",
          bad_fib.empty(), bad_fib);
  for (const auto& drop : marked) {
    std::string w1 = bad_drop_we.count(drop) ? bad_drop_we.at(drop) : "";
    rep.add("weak equivalences survive unmarking " + drop + " (" + note + ")", w1.empty(), w1);
    std::string w2 = bad_drop_fib.count(drop) ? bad_drop_fib.at(drop) : "";
    rep.add("colimit-side fibrations unchanged unmarking " + drop + " (" + note + ")", w2.empty(),
            w2);
  }
  if (monotone)
    rep.add("entrywise structure classifies identically (" + note + ")", bad_proj.empty(),
            bad_proj);
  else
    rep.add("entrywise comparison skipped", true,
            "degree structure is not monotone increasing; the exact-match claim does not apply");
  return rep;
}

// -------- categorical nerve levels --------

namespace {

int ladder_length(const Diagram& x) { return int(x.shape->objects().size()) - 1; }

std::vector<std::string> ladder_entries(const Diagram& x) {
  int k = ladder_length(x);
  std::vector<std::string> out;
  for (int i = 0; i <= k; ++i) out.push_back(x.at(std::to_string(i)));
  return out;
}

std::vector<std::string> ladder_cons(const Diagram& x) {
  int k = ladder_length(x);
  std::vector<std::string> out;
  for (int i = 0; i < k; ++i)
    out.push_back(x.edge("g_" + std::to_string(i) + "_" + std::to_string(i + 1)));
  return out;
}

Diagram make_ladder(const AmbientPtr& m, const std::vector<std::string>& ents,
                    const std::vector<std::string>& cons) {
  int k = int(ents.size()) - 1;
  Diagram out;
  out.shape = chain_category(k);
  out.ambient = m;
  for (int i = 0; i <= k; ++i) out.data.entries[std::to_string(i)] = ents[size_t(i)];
  for (int i = 0; i < k; ++i) {
    std::string cur = cons[size_t(i)];
    out.data.edges["g_" + std::to_string(i) + "_" + std::to_string(i + 1)] = cur;
    for (int j = i + 2; j <= k; ++j) {
      cur = m->compose(cons[size_t(j - 1)], cur);
      out.data.edges["g_" + std::to_string(i) + "_" + std::to_string(j)] = cur;
    }
  }
  out.validate();
  return out;
}

void check_pad_entries(const AmbientModel& m, const Diagram& before, const Diagram& after) {
  std::set<std::string> allowed;
  for (const auto& [o, e] : before.data.entries) allowed.insert(e);
  allowed.insert(m.initial_object());
  allowed.insert(m.final_object());
  for (const auto& [o, e] : after.data.entries)
    if (!allowed.count(e))
      throw HardError("padding introduced an entry beyond the endpoint objects: " + e);
}

std::vector<Diagram> enum_ladders(const AmbientPtr& m, int n, const Budget& b) {
  if (n < 0) throw ValidationError("ladder level must be non-negative");
  FinCatPtr shape = chain_category(n);
  std::vector<Diagram> out;
  EnumStats st;
  for_each_diagram(*m, shape, b,
                   [&](const ShapeDiagramData& d) {
                     out.push_back(Diagram{shape, m, d});
                     return true;
                   },
                   st);
  if (st.capped)
    throw BudgetExceeded("ladder enumeration at level " + std::to_string(n) + " was cut off");
  if (long(out.size()) > b.max_objects)
    throw BudgetExceeded("ladder level " + std::to_string(n) + " holds more than " +
                         std::to_string(b.max_objects) + " objects");
  return out;
}

std::string comps_key(const Diagram& x, const std::map<std::string, std::string>& comps) {
  std::vector<std::string> parts;
  for (const auto& o : x.shape->objects()) parts.push_back(comps.at(o));
  return join(parts, "|");
}

std::vector<std::map<std::string, std::string>> ladder_homs(const Diagram& x, const Diagram& y,
                                                            const Budget& b) {
  std::vector<std::map<std::string, std::string>> out;
  EnumStats st;
  for_each_map(x, y, b,
               [&](const std::map<std::string, std::string>& comps) {
                 out.push_back(comps);
                 return true;
               },
               st);
  if (st.capped) throw BudgetExceeded("ladder hom-set enumeration was cut off");
  return out;
}

}  // namespace

std::string nerve_encode(const Diagram& x) {
  int k = ladder_length(x);
  return "lv" + std::to_string(k) + "[" + join(ladder_entries(x), ";") + "#" +
         join(ladder_cons(x), ";") + "]";
}

NerveLevel nerve_level(const AmbientPtr& m, int n, const Budget& b) {
  NerveLevel out;
  out.n = n;
  out.m = m;
  out.objects = enum_ladders(m, n, b);
  for (const auto& d : out.objects) {
    out.ids.push_back(nerve_encode(d));
    out.by_id.emplace(out.ids.back(), d);
  }

  std::vector<MorData> mors;
  // (src idx, dst idx, component key) -> morphism id
  std::map<std::tuple<int, int, std::string>, std::string> lookup;
  long total = 0;
  for (int i = 0; i < int(out.objects.size()); ++i) {
    for (int j = 0; j < int(out.objects.size()); ++j) {
      int k = 0;
      for (const auto& comps : ladder_homs(out.objects[size_t(i)], out.objects[size_t(j)], b)) {
        bool is_id = i == j;
        if (is_id)
          for (const auto& [o, c] : comps)
            if (c != m->identity(out.objects[size_t(i)].at(o))) {
              is_id = false;
              break;
            }
        std::string id;
        if (is_id) {
          id = FinCategory::identity_id(out.ids[size_t(i)]);
        } else {
          id = "a" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k++);
          mors.push_back({id, out.ids[size_t(i)], out.ids[size_t(j)]});
          out.components.emplace(id, comps);
          if (++total > b.max_maps)
            throw BudgetExceeded("ladder level " + std::to_string(n) + " holds more than " +
                                 std::to_string(b.max_maps) + " transformations");
        }
        lookup.emplace(std::make_tuple(i, j, comps_key(out.objects[size_t(i)], comps)), id);
      }
    }
  }

  std::map<std::string, int> obj_index;
  for (int i = 0; i < int(out.ids.size()); ++i) obj_index[out.ids[size_t(i)]] = i;
  std::vector<ComposeTriple> triples;
  for (const auto& f : mors) {
    for (const auto& g : mors) {
      if (g.src != f.dst) continue;
      int i = obj_index.at(f.src), jmid = obj_index.at(f.dst), j = obj_index.at(g.dst);
      (void)jmid;
      std::map<std::string, std::string> comps;
      const auto& fc = out.components.at(f.id);
      const auto& gc = out.components.at(g.id);
      for (const auto& [o, c] : fc) comps[o] = m->compose(gc.at(o), c);
      auto it = lookup.find(std::make_tuple(i, j, comps_key(out.objects[size_t(i)], comps)));
      if (it == lookup.end())
        throw HardError("composite of enumerated transformations was not enumerated");
      triples.push_back({g.id, f.id, it->second});
    }
  }
  out.cat = FinCategory::build("nerve" + std::to_string(n), out.ids, mors, triples);
  return out;
}

Diagram nerve_face(const Diagram& x, int i) {
  int k = ladder_length(x);
  if (k < 1 || i < 0 || i > k)
    throw ValidationError("face index " + std::to_string(i) + " out of range at length " +
                          std::to_string(k));
  const AmbientModel& m = *x.ambient;
  std::vector<std::string> ents = ladder_entries(x), cons = ladder_cons(x);
  std::vector<std::string> ne, nc;
  for (int t = 0; t <= k; ++t)
    if (t != i) ne.push_back(ents[size_t(t)]);
  for (int t = 0; t < k - 1; ++t) {
    if (i == 0)
      nc.push_back(cons[size_t(t + 1)]);
    else if (i == k)
      nc.push_back(cons[size_t(t)]);
    else if (t < i - 1)
      nc.push_back(cons[size_t(t)]);
    else if (t == i - 1)
      nc.push_back(m.compose(cons[size_t(i)], cons[size_t(i - 1)]));
    else
      nc.push_back(cons[size_t(t + 1)]);
  }
  return make_ladder(x.ambient, ne, nc);
}

Diagram nerve_degen(const Diagram& x, int i) {
  int k = ladder_length(x);
  if (i < 0 || i > k)
    throw ValidationError("degeneracy index " + std::to_string(i) + " out of range at length " +
                          std::to_string(k));
  const AmbientModel& m = *x.ambient;
  std::vector<std::string> ents = ladder_entries(x), cons = ladder_cons(x);
  std::vector<std::string> ne, nc;
  for (int t = 0; t <= k + 1; ++t) ne.push_back(ents[size_t(t <= i ? t : t - 1)]);
  for (int t = 0; t < k + 1; ++t) {
    if (t < i)
      nc.push_back(cons[size_t(t)]);
    else if (t == i)
      nc.push_back(m.identity(ents[size_t(i)]));
    else
      nc.push_back(cons[size_t(t - 1)]);
  }
  return make_ladder(x.ambient, ne, nc);
}

Diagram nerve_pad_front(const Diagram& x) {
  const AmbientModel& m = *x.ambient;
  std::vector<std::string> ents = ladder_entries(x), cons = ladder_cons(x);
  std::vector<std::string> ne = {m.initial_object()}, nc = {m.from_initial(ents[0])};
  ne.insert(ne.end(), ents.begin(), ents.end());
  nc.insert(nc.end(), cons.begin(), cons.end());
  Diagram out = make_ladder(x.ambient, ne, nc);
  check_pad_entries(m, x, out);
  return out;
}

Diagram nerve_pad_back(const Diagram& x) {
  const AmbientModel& m = *x.ambient;
  std::vector<std::string> ents = ladder_entries(x), cons = ladder_cons(x);
  std::vector<std::string> ne = ents, nc = cons;
  nc.push_back(m.to_final(ents.back()));
  ne.push_back(m.final_object());
  Diagram out = make_ladder(x.ambient, ne, nc);
  check_pad_entries(m, x, out);
  return out;
}

CheckReport check_nerve_identities(const AmbientPtr& m, int max_n, const Budget& b) {
  CheckReport rep{"ladder interchange identities"};
  std::vector<std::vector<Diagram>> lv;
  for (int n = 0; n <= max_n; ++n) lv.push_back(enum_ladders(m, n, b));

  long ff = 0, dd = 0, fd = 0;
  std::string bad_ff, bad_dd, bad_fd;
  for (int n = 0; n <= max_n; ++n) {
    for (const auto& x : lv[size_t(n)]) {
      if (n >= 2) {
        for (int j = 1; j <= n; ++j)
          for (int i = 0; i < j; ++i) {
            ++ff;
            if (nerve_encode(nerve_face(nerve_face(x, j), i)) !=
                    nerve_encode(nerve_face(nerve_face(x, i), j - 1)) &&
                bad_ff.empty())
              bad_ff = "faces (" + std::to_string(i) + ", " + std::to_string(j) + ") on " +
                       nerve_encode(x);
          }
      }
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= j; ++i) {
          ++dd;
          if (nerve_encode(nerve_degen(nerve_degen(x, j), i)) !=
                  nerve_encode(nerve_degen(nerve_degen(x, i), j + 1)) &&
              bad_dd.empty())
            bad_dd = "degeneracies (" + std::to_string(i) + ", " + std::to_string(j) + ") on " +
                     nerve_encode(x);
        }
      for (int j = 0; j <= n; ++j) {
        Diagram sj = nerve_degen(x, j);
        for (int i = 0; i <= n + 1; ++i) {
          ++fd;
          std::string got = nerve_encode(nerve_face(sj, i));
          std::string want;
          if (i == j || i == j + 1)
            want = nerve_encode(x);
          else if (i < j)
            want = nerve_encode(nerve_degen(nerve_face(x, i), j - 1));
          else
            want = nerve_encode(nerve_degen(nerve_face(x, i - 1), j));
          if (got != want && bad_fd.empty())
            bad_fd = "face " + std::to_string(i) + " after degeneracy " + std::to_string(j) +
                     " on " + nerve_encode(x);
        }
      }
    }
  }
  rep.add("face interchange (" + std::to_string(ff) + " instances)", bad_ff.empty(), bad_ff);
  rep.add("degeneracy interchange (" + std::to_string(dd) + " instances)", bad_dd.empty(),
          bad_dd);
  rep.add("face-degeneracy interchange (" + std::to_string(fd) + " instances)", bad_fd.empty(),
          bad_fd);
  return rep;
}

namespace {

// One adjunction family check: L and R act on objects, transpositions act on
// component vectors indexed 0..(length of the codomain ladder). Failure
// raises HardError: these bijections hold in any ambient category with the
// required endpoint objects, so a miss is an implementation bug.
struct LadderFamily {
  std::string label;
  // domain objects of L live at `low` level if from_low, else at the high one
  bool left_from_low = false;
  std::function<Diagram(const Diagram&)> lf;  // applied to the left-hand object
  std::function<Diagram(const Diagram&)> rf;  // applied to the right-hand object
  // forward: components of (L a -> z) -> components of (a -> R z)
  std::function<std::vector<std::string>(const Diagram& a, const Diagram& z,
                                         const std::vector<std::string>&)>
      fwd;
  std::function<std::vector<std::string>(const Diagram& a, const Diagram& z,
                                         const std::vector<std::string>&)>
      bwd;
};

std::vector<std::string> comp_vec(const Diagram& shape_of,
                                  const std::map<std::string, std::string>& comps) {
  std::vector<std::string> out;
  for (int t = 0; t <= ladder_length(shape_of); ++t) out.push_back(comps.at(std::to_string(t)));
  return out;
}

std::map<std::string, std::string> comp_map(const std::vector<std::string>& v) {
  std::map<std::string, std::string> out;
  for (int t = 0; t < int(v.size()); ++t) out[std::to_string(t)] = v[size_t(t)];
  return out;
}

void run_family(CheckReport& rep, const LadderFamily& fam, const std::vector<Diagram>& low,
                const std::vector<Diagram>& high, const Budget& b) {
  const std::vector<Diagram>& as = fam.left_from_low ? low : high;
  const std::vector<Diagram>& zs = fam.left_from_low ? high : low;
  long pairs = 0, maps = 0;
  for (const auto& a : as) {
    Diagram la = fam.lf(a);
    for (const auto& z : zs) {
      Diagram rz = fam.rf(z);
      std::set<std::string> target, seen;
      for (const auto& c : ladder_homs(a, rz, b)) target.insert(comps_key(a, c));
      for (const auto& c : ladder_homs(la, z, b)) {
        std::vector<std::string> phi = comp_vec(la, c);
        std::vector<std::string> psi = fam.fwd(a, z, phi);
        DiagramMap built{a, rz, comp_map(psi)};
        try {
          built.validate();
        } catch (const ValidationError& e) {
          throw HardError(fam.label + ": transposed ladder is not a map: " + e.what());
        }
        std::string key = comps_key(a, built.components);
        if (!target.count(key))
          throw HardError(fam.label + ": transpose misses the enumerated hom-set");
        if (!seen.insert(key).second) throw HardError(fam.label + ": transpose is not injective");
        if (fam.bwd(a, z, psi) != phi)
          throw HardError(fam.label + ": transposes are not mutually inverse");
        ++maps;
      }
      if (seen.size() != target.size())
        throw HardError(fam.label + ": transpose is not surjective (" +
                        std::to_string(seen.size()) + " of " + std::to_string(target.size()) +
                        ")");
      ++pairs;
    }
  }
  rep.add(fam.label + " (" + std::to_string(pairs) + " object pairs, " + std::to_string(maps) +
              " ladder maps)",
          true);
}

}  // namespace

CheckReport check_nerve_adjunctions(const AmbientPtr& m, int n, const Budget& b) {
  if (n < 1) throw ValidationError("adjunction families need level at least 1");
  CheckReport rep{"ladder adjunctions"};
  std::vector<Diagram> low = enum_ladders(m, n - 1, b);
  std::vector<Diagram> high = enum_ladders(m, n, b);

  for (int i = 0; i <= n - 1; ++i) {
    // face_i left adjoint to degen_i: Hom(face_i X, Z) <-> Hom(X, degen_i Z).
    LadderFamily f1;
    f1.label = "(face_" + std::to_string(i) + ", degen_" + std::to_string(i) + ") bijection";
    f1.left_from_low = false;
    f1.lf = [i](const Diagram& x) { return nerve_face(x, i); };
    f1.rf = [i](const Diagram& z) { return nerve_degen(z, i); };
    f1.fwd = [i, &m](const Diagram& a, const Diagram&, const std::vector<std::string>& phi) {
      std::vector<std::string> cons = ladder_cons(a);
      std::vector<std::string> psi;
      for (int t = 0; t < int(phi.size()) + 1; ++t) {
        if (t <= i - 1)
          psi.push_back(phi[size_t(t)]);
        else if (t == i)
          psi.push_back(m->compose(phi[size_t(i)], cons[size_t(i)]));
        else
          psi.push_back(phi[size_t(t - 1)]);
      }
      return psi;
    };
    f1.bwd = [i](const Diagram&, const Diagram&, const std::vector<std::string>& psi) {
      std::vector<std::string> phi;
      for (int t = 0; t < int(psi.size()); ++t)
        if (t != i) phi.push_back(psi[size_t(t)]);
      return phi;
    };
    run_family(rep, f1, low, high, b);

    // degen_i left adjoint to face_{i+1}: Hom(degen_i Y, X) <-> Hom(Y, face_{i+1} X).
    LadderFamily f2;
    f2.label = "(degen_" + std::to_string(i) + ", face_" + std::to_string(i + 1) + ") bijection";
    f2.left_from_low = true;
    f2.lf = [i](const Diagram& y) { return nerve_degen(y, i); };
    f2.rf = [i](const Diagram& x) { return nerve_face(x, i + 1); };
    f2.fwd = [i](const Diagram&, const Diagram&, const std::vector<std::string>& z) {
      std::vector<std::string> w;
      for (int t = 0; t < int(z.size()); ++t)
        if (t != i + 1) w.push_back(z[size_t(t)]);
      return w;
    };
    f2.bwd = [i, &m](const Diagram&, const Diagram& x, const std::vector<std::string>& w) {
      std::vector<std::string> cons = ladder_cons(x);
      std::vector<std::string> z;
      for (int t = 0; t < int(w.size()) + 1; ++t) {
        if (t <= i)
          z.push_back(w[size_t(t)]);
        else if (t == i + 1)
          z.push_back(m->compose(cons[size_t(i)], w[size_t(i)]));
        else
          z.push_back(w[size_t(t - 1)]);
      }
      return z;
    };
    run_family(rep, f2, low, high, b);
  }

  // pad_front left adjoint to face_0: Hom(pad_front Y, Z) <-> Hom(Y, face_0 Z).
  LadderFamily p1;
  p1.label = "(pad_front, face_0) bijection";
  p1.left_from_low = true;
  p1.lf = [](const Diagram& y) { return nerve_pad_front(y); };
  p1.rf = [](const Diagram& z) { return nerve_face(z, 0); };
  p1.fwd = [](const Diagram&, const Diagram&, const std::vector<std::string>& z) {
    return std::vector<std::string>(z.begin() + 1, z.end());
  };
  p1.bwd = [&m](const Diagram&, const Diagram& z, const std::vector<std::string>& w) {
    std::vector<std::string> out = {m->from_initial(z.at("0"))};
    out.insert(out.end(), w.begin(), w.end());
    return out;
  };
  run_family(rep, p1, low, high, b);

  // face_n left adjoint to pad_back: Hom(face_n Y, Z) <-> Hom(Y, pad_back Z).
  LadderFamily p2;
  p2.label = "(face_" + std::to_string(n) + ", pad_back) bijection";
  p2.left_from_low = false;
  p2.lf = [n](const Diagram& y) { return nerve_face(y, n); };
  p2.rf = [](const Diagram& z) { return nerve_pad_back(z); };
  p2.fwd = [n, &m](const Diagram& a, const Diagram&, const std::vector<std::string>& phi) {
    std::vector<std::string> psi = phi;
    psi.push_back(m->to_final(a.at(std::to_string(n))));
    return psi;
  };
  p2.bwd = [](const Diagram&, const Diagram&, const std::vector<std::string>& psi) {
    return std::vector<std::string>(psi.begin(), psi.end() - 1);
  };
  run_family(rep, p2, low, high, b);

  rep.add("padding adds only endpoint entries", true,
          "asserted on every pad application during the checks");
  return rep;
}

}  // namespace modred
