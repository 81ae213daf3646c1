#include "modred/fincat.hpp"

#include <algorithm>
#include <set>

#include "modred/common.hpp"

namespace modred {

namespace {

bool starts_with(const std::string& s, const std::string& pre) {
  return s.size() >= pre.size() && s.compare(0, pre.size(), pre) == 0;
}

}  // namespace

int FinCategory::idx(const std::string& id) const {
  auto it = mor_index_.find(id);
  if (it == mor_index_.end()) throw ValidationError("unknown morphism '" + id + "' in " + name_);
  return it->second;
}

bool FinCategory::has_object(const std::string& o) const {
  return std::binary_search(objects_.begin(), objects_.end(), o);
}

bool FinCategory::has_morphism(const std::string& m) const {
  return mor_index_.count(m) != 0;
}

const MorData& FinCategory::mor(const std::string& id) const {
  auto it = mors_.find(id);
  if (it == mors_.end()) throw ValidationError("unknown morphism '" + id + "' in " + name_);
  return it->second;
}

bool FinCategory::is_identity(const std::string& id) const {
  const MorData& m = mor(id);
  return m.src == m.dst && id == identity_id(m.src);
}

const std::string& FinCategory::compose(const std::string& g, const std::string& f) const {
  int gi = idx(g), fi = idx(f);
  if (mors_.at(f).dst != mors_.at(g).src)
    throw ValidationError("morphisms not composable: " + g + " after " + f);
  int r = table_[size_t(gi) * mor_ids_.size() + fi];
  return mor_ids_[size_t(r)];
}

std::vector<std::string> FinCategory::hom(const std::string& a, const std::string& b) const {
  if (!has_object(a) || !has_object(b))
    throw ValidationError("hom endpoints not objects of " + name_);
  std::vector<std::string> out;
  for (const auto& id : mor_ids_) {
    const MorData& m = mors_.at(id);
    if (m.src == a && m.dst == b) out.push_back(id);
  }
  return out;
}

std::vector<std::string> FinCategory::nonidentity_morphisms() const {
  std::vector<std::string> out;
  for (const auto& id : mor_ids_)
    if (!is_identity(id)) out.push_back(id);
  return out;
}

std::vector<std::string> FinCategory::indecomposables() const {
  std::vector<std::string> nonid = nonidentity_morphisms();
  std::set<std::string> composite;
  for (const auto& f : nonid)
    for (const auto& g : nonid)
      if (mors_.at(f).dst == mors_.at(g).src) composite.insert(compose(g, f));
  std::vector<std::string> out;
  for (const auto& id : nonid)
    if (!composite.count(id)) out.push_back(id);
  return out;
}

std::map<std::string, std::optional<FinCategory::GenWitness>>
FinCategory::generation_witnesses(const std::vector<std::string>& gens) const {
  std::map<std::string, std::optional<GenWitness>> out;
  for (const auto& o : objects_) out[identity_id(o)] = std::nullopt;
  for (const auto& g : gens) out[g] = std::nullopt;
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::string> have;
    for (const auto& [id, w] : out) have.push_back(id);
    for (const auto& f : have)
      for (const auto& g : have) {
        if (mors_.at(f).dst != mors_.at(g).src) continue;
        const std::string& gf = compose(g, f);
        if (!out.count(gf)) {
          out[gf] = GenWitness{g, f};
          grew = true;
        }
      }
  }
  if (out.size() != mor_ids_.size())
    throw ValidationError("morphism set of " + name_ + " is not generated by the given set");
  return out;
}

std::vector<std::string> FinCategory::generating_morphisms() const {
  std::vector<std::string> gens = nonidentity_morphisms();
  auto generates = [&](const std::vector<std::string>& s) {
    std::set<std::string> closure;
    for (const auto& o : objects_) closure.insert(identity_id(o));
    closure.insert(s.begin(), s.end());
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::string> have(closure.begin(), closure.end());
      for (const auto& f : have)
        for (const auto& g : have) {
          if (mors_.at(f).dst != mors_.at(g).src) continue;
          if (closure.insert(compose(g, f)).second) grew = true;
        }
    }
    return closure.size() == mor_ids_.size();
  };
  // Greedy minimization in sorted order keeps the result canonical.
  for (size_t i = 0; i < gens.size();) {
    std::vector<std::string> trial = gens;
    trial.erase(trial.begin() + long(i));
    if (generates(trial))
      gens = std::move(trial);
    else
      ++i;
  }
  return gens;
}

bool FinCategory::same_structure(const FinCategory& o) const {
  if (objects_ != o.objects_ || mor_ids_ != o.mor_ids_) return false;
  for (const auto& [id, m] : mors_) {
    const MorData& n = o.mors_.at(id);
    if (m.src != n.src || m.dst != n.dst) return false;
  }
  const size_t n = mor_ids_.size();
  for (size_t g = 0; g < n; ++g)
    for (size_t f = 0; f < n; ++f)
      if (table_[g * n + f] != o.table_[g * n + f]) return false;
  return true;
}

FinCatPtr FinCategory::build(std::string name, std::vector<std::string> objects,
                             std::vector<MorData> morphisms,
                             std::vector<ComposeTriple> composition) {
  auto cat = std::shared_ptr<FinCategory>(new FinCategory());
  cat->name_ = std::move(name);

  std::sort(objects.begin(), objects.end());
  for (size_t i = 0; i + 1 < objects.size(); ++i)
    if (objects[i] == objects[i + 1])
      throw ValidationError("duplicate object '" + objects[i] + "' in " + cat->name_);
  for (const auto& o : objects)
    if (o.empty()) throw ValidationError("empty object id in " + cat->name_);
  cat->objects_ = objects;

  for (const auto& o : objects) morphisms.push_back({identity_id(o), o, o});
  std::sort(morphisms.begin(), morphisms.end(),
            [](const MorData& a, const MorData& b) { return a.id < b.id; });
  for (size_t i = 0; i + 1 < morphisms.size(); ++i)
    if (morphisms[i].id == morphisms[i + 1].id)
      throw ValidationError("duplicate morphism id '" + morphisms[i].id + "' in " + cat->name_);
  for (const auto& m : morphisms) {
    if (m.id.empty()) throw ValidationError("empty morphism id in " + cat->name_);
    if (starts_with(m.id, "id_") && m.id != identity_id(m.src))
      throw ValidationError("morphism id '" + m.id + "' uses the reserved identity prefix");
    if (!cat->has_object(m.src) || !cat->has_object(m.dst))
      throw ValidationError("morphism '" + m.id + "' has unknown endpoint in " + cat->name_);
    cat->mor_ids_.push_back(m.id);
    cat->mors_[m.id] = m;
  }
  for (size_t i = 0; i < cat->mor_ids_.size(); ++i) cat->mor_index_[cat->mor_ids_[i]] = int(i);

  const size_t n = cat->mor_ids_.size();
  cat->table_.assign(n * n, -1);
  auto set_entry = [&](const std::string& g, const std::string& f, const std::string& gf,
                       const char* origin) {
    int gi = cat->idx(g), fi = cat->idx(f), ri = cat->idx(gf);
    const MorData& mg = cat->mors_.at(g);
    const MorData& mf = cat->mors_.at(f);
    const MorData& mr = cat->mors_.at(gf);
    if (mf.dst != mg.src)
      throw ValidationError(std::string(origin) + ": pair not composable: " + g + " after " + f);
    if (mr.src != mf.src || mr.dst != mg.dst)
      throw ValidationError(std::string(origin) + ": composite '" + gf +
                            "' has wrong endpoints for " + g + " after " + f);
    int& slot = cat->table_[size_t(gi) * n + fi];
    if (slot != -1 && slot != ri)
      throw ValidationError("conflicting composition entries for " + g + " after " + f);
    slot = ri;
  };

  for (const auto& m : morphisms) {
    set_entry(identity_id(m.dst), m.id, m.id, "identity law");
    set_entry(m.id, identity_id(m.src), m.id, "identity law");
  }
  for (const auto& t : composition) {
    if (!cat->has_morphism(t.g) || !cat->has_morphism(t.f) || !cat->has_morphism(t.gf))
      throw ValidationError("composition triple mentions unknown morphism (" + t.g + ", " + t.f +
                            ", " + t.gf + ")");
    set_entry(t.g, t.f, t.gf, "composition table");
  }

  for (size_t gi = 0; gi < n; ++gi)
    for (size_t fi = 0; fi < n; ++fi) {
      const MorData& mg = cat->mors_.at(cat->mor_ids_[gi]);
      const MorData& mf = cat->mors_.at(cat->mor_ids_[fi]);
      if (mf.dst == mg.src && cat->table_[gi * n + fi] == -1)
        throw ValidationError("composition table incomplete in " + cat->name_ + ": missing " +
                              cat->mor_ids_[gi] + " after " + cat->mor_ids_[fi]);
    }

  // Associativity over every composable triple.
  for (const auto& f : cat->mor_ids_)
    for (const auto& g : cat->mor_ids_) {
      if (cat->mors_.at(f).dst != cat->mors_.at(g).src) continue;
      const std::string& gf = cat->compose(g, f);
      for (const auto& h : cat->mor_ids_) {
        if (cat->mors_.at(g).dst != cat->mors_.at(h).src) continue;
        if (cat->compose(cat->compose(h, g), f) != cat->compose(h, gf))
          throw ValidationError("associativity fails in " + cat->name_ + " at (" + h + ", " + g +
                                ", " + f + ")");
      }
    }

  return cat;
}

void CatFunctor::validate() const {
  if (!source || !target) throw ValidationError("functor with missing endpoint category");
  for (const auto& o : source->objects()) {
    auto it = obj_map.find(o);
    if (it == obj_map.end())
      throw ValidationError("functor misses object '" + o + "'");
    if (!target->has_object(it->second))
      throw ValidationError("functor sends '" + o + "' outside " + target->name());
  }
  for (const auto& m : source->morphisms()) {
    auto it = mor_map.find(m);
    if (it == mor_map.end()) throw ValidationError("functor misses morphism '" + m + "'");
    const MorData& sm = source->mor(m);
    const MorData& tm = target->mor(it->second);
    if (tm.src != obj_map.at(sm.src) || tm.dst != obj_map.at(sm.dst))
      throw ValidationError("functor breaks endpoints at '" + m + "'");
  }
  for (const auto& o : source->objects())
    if (mor_map.at(FinCategory::identity_id(o)) !=
        FinCategory::identity_id(obj_map.at(o)))
      throw ValidationError("functor breaks identity at '" + o + "'");
  for (const auto& f : source->morphisms())
    for (const auto& g : source->morphisms()) {
      if (source->mor(f).dst != source->mor(g).src) continue;
      if (mor_map.at(source->compose(g, f)) != target->compose(mor_map.at(g), mor_map.at(f)))
        throw ValidationError("functor breaks composition at (" + g + ", " + f + ")");
    }
}

namespace {
std::string grid_obj(int i, int j) { return std::to_string(i) + std::to_string(j); }
}  // namespace

FinCatPtr grid_category(int m, int n) {
  if (m < 0 || n < 0 || m > 9 || n > 9)
    throw ValidationError("grid_category indices must lie in [0, 9]");
  std::vector<std::string> objects;
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= n; ++j) objects.push_back(grid_obj(i, j));
  auto mor_id = [&](int i, int j, int k, int l) -> std::string {
    if (i == k && j == l) return FinCategory::identity_id(grid_obj(i, j));
    return "g_" + grid_obj(i, j) + "_" + grid_obj(k, l);
  };
  std::vector<MorData> mors;
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= n; ++j)
      for (int k = i; k <= m; ++k)
        for (int l = j; l <= n; ++l)
          if (!(i == k && j == l))
            mors.push_back({mor_id(i, j, k, l), grid_obj(i, j), grid_obj(k, l)});
  std::vector<ComposeTriple> comp;
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= n; ++j)
      for (int k = i; k <= m; ++k)
        for (int l = j; l <= n; ++l)
          for (int u = k; u <= m; ++u)
            for (int v = l; v <= n; ++v) {
              bool inner_id = (i == k && j == l), outer_id = (k == u && l == v);
              if (inner_id || outer_id) continue;
              comp.push_back({mor_id(k, l, u, v), mor_id(i, j, k, l), mor_id(i, j, u, v)});
            }
  return FinCategory::build("grid_" + std::to_string(m) + "_" + std::to_string(n),
                            std::move(objects), std::move(mors), std::move(comp));
}

FinCatPtr chain_category(int n) {
  if (n < 0 || n > 9) throw ValidationError("chain_category length must lie in [0, 9]");
  std::vector<std::string> objects;
  for (int i = 0; i <= n; ++i) objects.push_back(std::to_string(i));
  auto mor_id = [&](int i, int j) -> std::string {
    if (i == j) return FinCategory::identity_id(std::to_string(i));
    return "g_" + std::to_string(i) + "_" + std::to_string(j);
  };
  std::vector<MorData> mors;
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      mors.push_back({mor_id(i, j), std::to_string(i), std::to_string(j)});
  std::vector<ComposeTriple> comp;
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k)
        comp.push_back({mor_id(j, k), mor_id(i, j), mor_id(i, k)});
  return FinCategory::build("chain_" + std::to_string(n), std::move(objects), std::move(mors),
                            std::move(comp));
}

FinCatPtr full_subcategory(const FinCatPtr& c, const std::vector<std::string>& objs) {
  std::set<std::string> keep(objs.begin(), objs.end());
  for (const auto& o : keep)
    if (!c->has_object(o))
      throw ValidationError("full_subcategory: '" + o + "' is not an object of " + c->name());
  std::vector<std::string> objects(keep.begin(), keep.end());
  std::vector<MorData> mors;
  for (const auto& id : c->nonidentity_morphisms()) {
    const MorData& m = c->mor(id);
    if (keep.count(m.src) && keep.count(m.dst)) mors.push_back(m);
  }
  std::vector<ComposeTriple> comp;
  for (const auto& f : mors)
    for (const auto& g : mors)
      if (f.dst == g.src) {
        const std::string& gf = c->compose(g.id, f.id);
        comp.push_back({g.id, f.id, gf});
      }
  return FinCategory::build(c->name() + "_sub", std::move(objects), std::move(mors),
                            std::move(comp));
}

FinCatPtr opposite_category(const FinCatPtr& c) {
  std::vector<std::string> objects = c->objects();
  std::vector<MorData> mors;
  for (const auto& id : c->nonidentity_morphisms()) {
    const MorData& m = c->mor(id);
    mors.push_back({m.id, m.dst, m.src});
  }
  std::vector<ComposeTriple> comp;
  for (const auto& f : c->nonidentity_morphisms())
    for (const auto& g : c->nonidentity_morphisms())
      if (c->mor(f).dst == c->mor(g).src) comp.push_back({f, g, c->compose(g, f)});
  return FinCategory::build(c->name() + "_op", std::move(objects), std::move(mors),
                            std::move(comp));
}

namespace {

std::string simplex_obj(int k) { return "[" + std::to_string(k) + "]"; }

// All monotone maps [n] -> [m] as value vectors, lexicographic.
void monotone_maps(int n, int m, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(size_t(n) + 1, 0);
  while (true) {
    out.push_back(cur);
    int i = n;
    while (i >= 0 && cur[size_t(i)] == m) --i;
    if (i < 0) break;
    int v = cur[size_t(i)] + 1;
    for (int j = i; j <= n; ++j) cur[size_t(j)] = v;
  }
}

std::string simplex_mor_id(int m, int n, const std::vector<int>& values) {
  bool ident = (m == n);
  if (ident)
    for (size_t i = 0; i < values.size(); ++i)
      if (values[i] != int(i)) {
        ident = false;
        break;
      }
  if (ident) return FinCategory::identity_id(simplex_obj(m));
  std::string id = "s_" + std::to_string(m) + "_" + std::to_string(n) + "_";
  for (int v : values) id += std::to_string(v);
  return id;
}

}  // namespace

FinCatPtr truncated_simplex_op(int N, int cap) {
  if (N < 0) throw ValidationError("truncated_simplex_op level must be non-negative");
  if (N > cap)
    throw ValidationError("truncated_simplex_op level " + std::to_string(N) +
                          " exceeds the configured cap " + std::to_string(cap));
  std::vector<std::string> objects;
  for (int k = 0; k <= N; ++k) objects.push_back(simplex_obj(k));

  // phi[m][n] = monotone maps [n] -> [m], i.e. morphisms "[m]" -> "[n]".
  std::vector<std::vector<std::vector<std::vector<int>>>> phi(size_t(N) + 1);
  std::vector<MorData> mors;
  for (int m = 0; m <= N; ++m) {
    phi[size_t(m)].resize(size_t(N) + 1);
    for (int n = 0; n <= N; ++n) {
      monotone_maps(n, m, phi[size_t(m)][size_t(n)]);
      for (const auto& v : phi[size_t(m)][size_t(n)]) {
        std::string id = simplex_mor_id(m, n, v);
        if (id != FinCategory::identity_id(simplex_obj(m)))
          mors.push_back({id, simplex_obj(m), simplex_obj(n)});
      }
    }
  }

  std::vector<ComposeTriple> comp;
  for (int m = 0; m <= N; ++m)
    for (int n = 0; n <= N; ++n)
      for (const auto& vf : phi[size_t(m)][size_t(n)]) {
        std::string f = simplex_mor_id(m, n, vf);
        bool f_id = (f == FinCategory::identity_id(simplex_obj(m)));
        for (int k = 0; k <= N; ++k)
          for (const auto& vg : phi[size_t(n)][size_t(k)]) {
            std::string g = simplex_mor_id(n, k, vg);
            bool g_id = (g == FinCategory::identity_id(simplex_obj(n)));
            if (f_id || g_id) continue;
            // Composite [m] -> [k] has underlying map vf after vg.
            std::vector<int> vc(vg.size());
            for (size_t i = 0; i < vg.size(); ++i) vc[i] = vf[size_t(vg[i])];
            comp.push_back({g, f, simplex_mor_id(m, k, vc)});
          }
      }
  return FinCategory::build("simplex_op_" + std::to_string(N), std::move(objects),
                            std::move(mors), std::move(comp));
}

bool SimplexOpMor::mono() const {
  for (size_t i = 0; i + 1 < values.size(); ++i)
    if (values[i] >= values[i + 1]) return false;
  return true;
}

bool SimplexOpMor::epi() const {
  std::vector<bool> hit(size_t(src_level) + 1, false);
  for (int v : values) hit[size_t(v)] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

SimplexOpMor simplex_op_decode(const std::string& id) {
  SimplexOpMor out;
  if (starts_with(id, "id_[")) {
    int k = std::stoi(id.substr(4, id.size() - 5));
    out.src_level = out.dst_level = k;
    for (int i = 0; i <= k; ++i) out.values.push_back(i);
    return out;
  }
  if (!starts_with(id, "s_")) throw ValidationError("not a simplex-op morphism id: " + id);
  size_t a = id.find('_', 2);
  size_t b = id.find('_', a + 1);
  out.src_level = std::stoi(id.substr(2, a - 2));
  out.dst_level = std::stoi(id.substr(a + 1, b - a - 1));
  for (size_t i = b + 1; i < id.size(); ++i) out.values.push_back(id[i] - '0');
  if (int(out.values.size()) != out.dst_level + 1)
    throw ValidationError("malformed simplex-op morphism id: " + id);
  return out;
}

long monotone_map_count(int a, int b) {
  // Monotone maps [a] -> [b] = multisets of size a+1 from b+1 values.
  long n = a + b + 1, k = a + 1;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace modred
