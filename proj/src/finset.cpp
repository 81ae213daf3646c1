#include "modred/finset.hpp"

#include <algorithm>
#include <numeric>

namespace modred {

std::string FinSetMor::encode() const {
  std::string out = std::to_string(dom) + ">" + std::to_string(cod) + ":";
  for (size_t i = 0; i < img.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(img[i]);
  }
  return out;
}

bool FinSetMor::injective() const {
  std::vector<bool> seen(size_t(cod), false);
  for (int v : img) {
    if (seen[size_t(v)]) return false;
    seen[size_t(v)] = true;
  }
  return true;
}

bool FinSetMor::surjective() const {
  std::vector<bool> seen(size_t(cod), false);
  for (int v : img) seen[size_t(v)] = true;
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

FinSetMor finset_decode(const std::string& f) {
  size_t gt = f.find('>');
  size_t colon = f.find(':', gt == std::string::npos ? 0 : gt);
  if (gt == std::string::npos || colon == std::string::npos)
    throw ValidationError("malformed finite-set morphism: " + f);
  FinSetMor m;
  try {
    m.dom = std::stoi(f.substr(0, gt));
    m.cod = std::stoi(f.substr(gt + 1, colon - gt - 1));
  } catch (const std::exception&) {
    throw ValidationError("malformed finite-set morphism: " + f);
  }
  if (m.dom < 0 || m.cod < 0) throw ValidationError("negative cardinality in: " + f);
  std::string rest = f.substr(colon + 1);
  size_t pos = 0;
  while (pos < rest.size()) {
    size_t comma = rest.find(',', pos);
    std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos
                                                                  : comma - pos);
    try {
      m.img.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw ValidationError("malformed image list in: " + f);
    }
    pos = comma == std::string::npos ? rest.size() : comma + 1;
  }
  if (int(m.img.size()) != m.dom)
    throw ValidationError("image list length disagrees with domain in: " + f);
  for (int v : m.img)
    if (v < 0 || v >= m.cod) throw ValidationError("image out of range in: " + f);
  if (m.encode() != f) throw ValidationError("non-canonical finite-set morphism: " + f);
  return m;
}

namespace {

int obj_card(const std::string& x) {
  if (x.empty() || x.find_first_not_of("0123456789") != std::string::npos)
    throw ValidationError("not a finite-set object: " + x);
  int n = std::stoi(x);
  if (std::to_string(n) != x) throw ValidationError("non-canonical finite-set object: " + x);
  return n;
}

// Union-find with path compression; representatives are the smallest member
// of each class, so apex element order is canonical.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(size_t(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[size_t(a)] != a) {
      parent[size_t(a)] = parent[size_t(parent[size_t(a)])];
      a = parent[size_t(a)];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[size_t(b)] = a;  // smaller index wins
  }
};

class FinSetAmbient : public AmbientModel {
 public:
  std::string name() const override { return "finset-wfs"; }

  bool valid_object(const std::string& x) const override {
    try {
      obj_card(x);
      return true;
    } catch (const ValidationError&) {
      return false;
    }
  }
  bool valid_morphism(const std::string& f) const override {
    try {
      finset_decode(f);
      return true;
    } catch (const ValidationError&) {
      return false;
    }
  }
  std::string dom(const std::string& f) const override {
    return std::to_string(finset_decode(f).dom);
  }
  std::string cod(const std::string& f) const override {
    return std::to_string(finset_decode(f).cod);
  }
  std::string identity(const std::string& x) const override {
    int n = obj_card(x);
    FinSetMor m;
    m.dom = m.cod = n;
    m.img.resize(size_t(n));
    std::iota(m.img.begin(), m.img.end(), 0);
    return m.encode();
  }
  std::string compose(const std::string& g, const std::string& f) const override {
    FinSetMor mf = finset_decode(f), mg = finset_decode(g);
    if (mf.cod != mg.dom)
      throw ValidationError("finite-set morphisms not composable: " + g + " after " + f);
    FinSetMor r;
    r.dom = mf.dom;
    r.cod = mg.cod;
    for (int v : mf.img) r.img.push_back(mg.img[size_t(v)]);
    return r.encode();
  }

  std::string initial_object() const override { return "0"; }
  std::string final_object() const override { return "1"; }
  std::string from_initial(const std::string& x) const override {
    FinSetMor m;
    m.dom = 0;
    m.cod = obj_card(x);
    return m.encode();
  }
  std::string to_final(const std::string& x) const override {
    FinSetMor m;
    m.dom = obj_card(x);
    m.cod = 1;
    m.img.assign(size_t(m.dom), 0);
    return m.encode();
  }

  ColimitResult colimit(const FinCatPtr& shape, const ShapeDiagramData& d) const override;
  LimitResult limit(const FinCatPtr& shape, const ShapeDiagramData& d) const override;

  bool is_cof(const std::string& f) const override { return finset_decode(f).injective(); }
  bool is_fib(const std::string& f) const override { return finset_decode(f).surjective(); }
  bool is_we(const std::string& f) const override {
    finset_decode(f);
    return true;
  }
  bool is_iso(const std::string& f) const override {
    FinSetMor m = finset_decode(f);
    return m.injective() && m.surjective();
  }

  // f: A -> B factors through A ⊔ B (A-part first): the inclusion is
  // injective, and (f on A, identity on B) is surjective. The same pair
  // serves both oracles because every map is a weak equivalence.
  Factorization factor_cof_acyfib(const std::string& f) const override {
    FinSetMor m = finset_decode(f);
    FinSetMor inc;
    inc.dom = m.dom;
    inc.cod = m.dom + m.cod;
    inc.img.resize(size_t(m.dom));
    std::iota(inc.img.begin(), inc.img.end(), 0);
    FinSetMor proj;
    proj.dom = m.dom + m.cod;
    proj.cod = m.cod;
    proj.img = m.img;
    for (int i = 0; i < m.cod; ++i) proj.img.push_back(i);
    return {inc.encode(), std::to_string(inc.cod), proj.encode()};
  }
  Factorization factor_acycof_fib(const std::string& f) const override {
    return factor_cof_acyfib(f);
  }

  std::vector<std::string> enum_objects(const Budget& b) const override {
    std::vector<std::string> out;
    for (int n = 0; n <= b.max_set_card; ++n) out.push_back(std::to_string(n));
    return out;
  }
  std::vector<std::string> enum_homs(const std::string& x, const std::string& y,
                                     const Budget& b) const override {
    int a = obj_card(x), c = obj_card(y);
    if (a > 0 && c == 0) return {};
    long total = 1;
    for (int i = 0; i < a; ++i) {
      total *= c;
      if (total > b.max_hom_size)
        throw BudgetExceeded("hom-set " + x + " -> " + y + " exceeds budget");
    }
    std::vector<std::string> out;
    FinSetMor m;
    m.dom = a;
    m.cod = c;
    m.img.assign(size_t(a), 0);
    for (long k = 0; k < total; ++k) {
      out.push_back(m.encode());
      for (int i = a - 1; i >= 0; --i) {
        if (++m.img[size_t(i)] < c) break;
        m.img[size_t(i)] = 0;
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool has_generating_sets() const override { return true; }
  std::vector<std::string> gen_cofibrations(const Budget&) const override {
    return {"0>1:"};
  }
  std::vector<std::string> gen_acyclic_cofibrations(const Budget&) const override {
    return {"0>1:"};
  }
};

ColimitResult FinSetAmbient::colimit(const FinCatPtr& shape, const ShapeDiagramData& d) const {
  validate_shape_diagram(*this, shape, d);
  // Disjoint union indexed in sorted shape-object order, then the quotient by
  // the relation generated by all edges.
  std::map<std::string, int> offset;
  int total = 0;
  for (const auto& o : shape->objects()) {
    offset[o] = total;
    total += obj_card(d.entries.at(o));
  }
  UnionFind uf(total);
  for (const auto& e : shape->nonidentity_morphisms()) {
    FinSetMor m = finset_decode(d.edges.at(e));
    int so = offset.at(shape->src(e)), to = offset.at(shape->dst(e));
    for (int i = 0; i < m.dom; ++i) uf.unite(so + i, to + m.img[size_t(i)]);
  }
  // Classes ordered by smallest member.
  std::vector<int> reps;
  std::vector<int> class_of(size_t(total), -1);
  for (int i = 0; i < total; ++i)
    if (uf.find(i) == i) {
      class_of[size_t(i)] = int(reps.size());
      reps.push_back(i);
    }
  for (int i = 0; i < total; ++i) class_of[size_t(i)] = class_of[size_t(uf.find(i))];

  ColimitResult res;
  res.apex = std::to_string(reps.size());
  for (const auto& o : shape->objects()) {
    FinSetMor leg;
    leg.dom = obj_card(d.entries.at(o));
    leg.cod = int(reps.size());
    for (int i = 0; i < leg.dom; ++i) leg.img.push_back(class_of[size_t(offset.at(o) + i)]);
    res.legs[o] = leg.encode();
  }
  auto shape_c = shape;
  auto data = d;
  auto offsets = offset;
  auto classes = class_of;
  int nclasses = int(reps.size());
  auto representatives = reps;
  res.induce = [this, shape_c, data, offsets, classes, nclasses, representatives](
                   const std::map<std::string, std::string>& cocone,
                   const std::string& target) -> std::string {
    int tcard = obj_card(target);
    std::vector<FinSetMor> legs;
    std::map<std::string, FinSetMor> cm;
    for (const auto& o : shape_c->objects()) {
      auto it = cocone.find(o);
      if (it == cocone.end()) throw ValidationError("cocone misses leg at '" + o + "'");
      FinSetMor m = finset_decode(it->second);
      if (m.dom != obj_card(data.entries.at(o)) || m.cod != tcard)
        throw ValidationError("cocone leg at '" + o + "' has wrong endpoints");
      cm[o] = m;
    }
    for (const auto& e : shape_c->nonidentity_morphisms()) {
      FinSetMor m = finset_decode(data.edges.at(e));
      const FinSetMor& ls = cm.at(shape_c->src(e));
      const FinSetMor& lt = cm.at(shape_c->dst(e));
      for (int i = 0; i < m.dom; ++i)
        if (ls.img[size_t(i)] != lt.img[size_t(m.img[size_t(i)])])
          throw ValidationError("cocone does not commute along '" + e + "'");
    }
    FinSetMor out;
    out.dom = nclasses;
    out.cod = tcard;
    out.img.assign(size_t(nclasses), 0);
    // Each class maps to the cocone value of its representative; the cocone
    // condition makes this independent of the member chosen.
    for (int c = 0; c < nclasses; ++c) {
      int rep = representatives[size_t(c)];
      std::string at;
      int local = rep;
      for (const auto& o : shape_c->objects()) {
        int card = obj_card(data.entries.at(o));
        if (local < card) {
          at = o;
          break;
        }
        local -= card;
      }
      out.img[size_t(c)] = cm.at(at).img[size_t(local)];
    }
    return out.encode();
  };
  return res;
}

LimitResult FinSetAmbient::limit(const FinCatPtr& shape, const ShapeDiagramData& d) const {
  validate_shape_diagram(*this, shape, d);
  const auto& objs = shape->objects();
  std::vector<int> cards;
  for (const auto& o : objs) cards.push_back(obj_card(d.entries.at(o)));

  // Enumerate compatible tuples in lexicographic order over the sorted
  // object list.
  std::vector<std::vector<int>> tuples;
  std::vector<int> cur(objs.size(), 0);
  bool any = !objs.empty() &&
             std::all_of(cards.begin(), cards.end(), [](int c) { return c > 0; });
  if (objs.empty()) tuples.push_back({});
  while (any) {
    bool okT = true;
    for (const auto& e : shape->nonidentity_morphisms()) {
      FinSetMor m = finset_decode(d.edges.at(e));
      size_t si = size_t(std::lower_bound(objs.begin(), objs.end(), shape->src(e)) -
                         objs.begin());
      size_t ti = size_t(std::lower_bound(objs.begin(), objs.end(), shape->dst(e)) -
                         objs.begin());
      if (m.img[size_t(cur[si])] != cur[ti]) {
        okT = false;
        break;
      }
    }
    if (okT) tuples.push_back(cur);
    int i = int(objs.size()) - 1;
    for (; i >= 0; --i) {
      if (++cur[size_t(i)] < cards[size_t(i)]) break;
      cur[size_t(i)] = 0;
    }
    if (i < 0) break;
  }

  LimitResult res;
  res.apex = std::to_string(tuples.size());
  for (size_t oi = 0; oi < objs.size(); ++oi) {
    FinSetMor leg;
    leg.dom = int(tuples.size());
    leg.cod = cards[oi];
    for (const auto& t : tuples) leg.img.push_back(t[oi]);
    res.legs[objs[oi]] = leg.encode();
  }
  auto shape_c = shape;
  auto data = d;
  auto tup = tuples;
  res.induce = [this, shape_c, data, tup](const std::map<std::string, std::string>& cone,
                                          const std::string& source) -> std::string {
    int scard = obj_card(source);
    const auto& objs2 = shape_c->objects();
    std::map<std::string, FinSetMor> cm;
    for (const auto& o : objs2) {
      auto it = cone.find(o);
      if (it == cone.end()) throw ValidationError("cone misses leg at '" + o + "'");
      FinSetMor m = finset_decode(it->second);
      if (m.dom != scard || m.cod != obj_card(data.entries.at(o)))
        throw ValidationError("cone leg at '" + o + "' has wrong endpoints");
      cm[o] = m;
    }
    for (const auto& e : shape_c->nonidentity_morphisms()) {
      FinSetMor m = finset_decode(data.edges.at(e));
      const FinSetMor& ls = cm.at(shape_c->src(e));
      const FinSetMor& lt = cm.at(shape_c->dst(e));
      for (int s = 0; s < scard; ++s)
        if (m.img[size_t(ls.img[size_t(s)])] != lt.img[size_t(s)])
          throw ValidationError("cone does not commute along '" + e + "'");
    }
    FinSetMor out;
    out.dom = scard;
    out.cod = int(tup.size());
    for (int s = 0; s < scard; ++s) {
      std::vector<int> want;
      for (const auto& o : objs2) want.push_back(cm.at(o).img[size_t(s)]);
      auto it = std::find(tup.begin(), tup.end(), want);
      if (it == tup.end())
        throw HardError("cone value escapes the limit tuple set");  // unreachable if commuting
      out.img.push_back(int(it - tup.begin()));
    }
    return out.encode();
  };
  return res;
}

}  // namespace

AmbientPtr finset_wfs() { return std::make_shared<FinSetAmbient>(); }

}  // namespace modred
