#include "modred/chain.hpp"

#include <algorithm>

namespace modred {

int ChainObj::dim_at(int i) const {
  return (i >= 0 && i < int(dims.size())) ? dims[size_t(i)] : 0;
}

FpMat ChainObj::d_at(int i) const {
  if (i >= 1 && i <= top()) return diff[size_t(i) - 1];
  return FpMat::zero(p, dim_at(i - 1), dim_at(i));
}

int ChainObj::homology_dim(int i) const {
  // ker d_i / im d_{i+1}; d_0 = 0, so ker d_0 is the whole level.
  int kdim = (i == 0) ? dim_at(0) : dim_at(i) - d_at(i).rank();
  return kdim - d_at(i + 1).rank();
}

std::string ChainObj::encode() const {
  std::string out = "ch(";
  for (size_t i = 0; i < dims.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(dims[i]);
  }
  for (const auto& m : diff) out += "|" + m.encode();
  return out + ")";
}

void ChainObj::validate() const {
  if (!dims.empty() && dims.back() == 0)
    throw ValidationError("non-canonical chain complex (trailing zero level): " + encode());
  for (int d : dims)
    if (d < 0) throw ValidationError("negative level dimension");
  if (diff.size() + 1 != std::max<size_t>(dims.size(), 1) && !dims.empty())
    throw ValidationError("differential count disagrees with levels in " + encode());
  for (size_t i = 0; i < diff.size(); ++i) {
    if (diff[i].p() != p || diff[i].rows() != dims[i] || diff[i].cols() != dims[i + 1])
      throw ValidationError("differential shape mismatch in " + encode());
  }
  for (int i = 1; i + 1 <= top(); ++i)
    if (!d_at(i).mul(d_at(i + 1)).is_zero())
      throw ValidationError("d∘d != 0 at level " + std::to_string(i + 1) + " in " + encode());
}

FpMat ChainMor::at(int i) const {
  if (i >= 0 && i < int(level.size())) return level[size_t(i)];
  return FpMat::zero(dom_o.p, cod_o.dim_at(i), dom_o.dim_at(i));
}

std::string ChainMor::encode() const {
  std::string out = "chm(" + dom_o.encode() + "->" + cod_o.encode();
  for (int i = 0; i < levels(); ++i) out += "|" + at(i).encode();
  return out + ")";
}

void ChainMor::validate() const {
  dom_o.validate();
  cod_o.validate();
  if (int(level.size()) != levels())
    throw ValidationError("level count mismatch in " + encode());
  for (int i = 0; i < levels(); ++i) {
    const FpMat& m = level[size_t(i)];
    if (m.rows() != cod_o.dim_at(i) || m.cols() != dom_o.dim_at(i) || m.p() != dom_o.p)
      throw ValidationError("level " + std::to_string(i) + " shape mismatch in " + encode());
  }
  for (int i = 1; i < levels(); ++i)
    if (cod_o.d_at(i).mul(at(i)) != at(i - 1).mul(dom_o.d_at(i)))
      throw ValidationError("chain condition fails at level " + std::to_string(i) + " in " +
                            encode());
}

namespace {

std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<int> parse_csv_ints(const std::string& s) {
  std::vector<int> out;
  if (s.empty()) return out;
  for (const auto& tok : split_top(s, ',')) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw ValidationError("malformed integer list: " + s);
    out.push_back(std::stoi(tok));
  }
  return out;
}

}  // namespace

ChainObj chain_obj_decode(int p, const std::string& s) {
  if (s.size() < 4 || s.compare(0, 3, "ch(") != 0 || s.back() != ')')
    throw ValidationError("not a chain complex encoding: " + s);
  std::string body = s.substr(3, s.size() - 4);
  ChainObj x;
  x.p = p;
  if (!body.empty()) {
    auto parts = split_top(body, '|');
    x.dims = parse_csv_ints(parts[0]);
    if (parts.size() != std::max<size_t>(x.dims.size(), 1))
      throw ValidationError("wrong differential section count in " + s);
    for (size_t i = 1; i < parts.size(); ++i)
      x.diff.push_back(fpmat_decode(p, x.dims[i - 1], x.dims[i], parts[i]));
  }
  x.validate();
  if (x.encode() != s) throw ValidationError("non-canonical chain complex encoding: " + s);
  return x;
}

ChainMor chain_mor_decode(int p, const std::string& s) {
  if (s.size() < 5 || s.compare(0, 4, "chm(") != 0 || s.back() != ')')
    throw ValidationError("not a chain map encoding: " + s);
  std::string body = s.substr(4, s.size() - 5);
  auto parts = split_top(body, '|');
  size_t arrow = parts[0].find(")->ch(");
  if (arrow == std::string::npos) throw ValidationError("missing -> in chain map: " + s);
  ChainMor f;
  f.dom_o = chain_obj_decode(p, parts[0].substr(0, arrow + 1));
  f.cod_o = chain_obj_decode(p, parts[0].substr(arrow + 3));
  if (int(parts.size()) - 1 != f.levels())
    throw ValidationError("wrong level section count in " + s);
  for (int i = 0; i < f.levels(); ++i)
    f.level.push_back(
        fpmat_decode(p, f.cod_o.dim_at(i), f.dom_o.dim_at(i), parts[size_t(i) + 1]));
  f.validate();
  if (f.encode() != s) throw ValidationError("non-canonical chain map encoding: " + s);
  return f;
}

ChainObj chain_zero(int p) {
  ChainObj x;
  x.p = p;
  return x;
}

ChainObj chain_sphere(int p, int n) {
  ChainObj x;
  x.p = p;
  x.dims.assign(size_t(n) + 1, 0);
  x.dims[size_t(n)] = 1;
  for (int i = 1; i <= n; ++i) x.diff.push_back(FpMat::zero(p, x.dims[size_t(i - 1)], x.dims[size_t(i)]));
  return x;
}

ChainObj chain_disk(int p, int n) {
  if (n < 1) throw ValidationError("disk complexes need degree >= 1");
  ChainObj x;
  x.p = p;
  x.dims.assign(size_t(n) + 1, 0);
  x.dims[size_t(n)] = 1;
  x.dims[size_t(n) - 1] = 1;
  for (int i = 1; i <= n; ++i) {
    FpMat m = FpMat::zero(p, x.dims[size_t(i - 1)], x.dims[size_t(i)]);
    if (i == n) m.set(0, 0, 1);
    x.diff.push_back(m);
  }
  return x;
}

ChainMor chain_zero_map(const ChainObj& a, const ChainObj& b) {
  ChainMor f;
  f.dom_o = a;
  f.cod_o = b;
  for (int i = 0; i < f.levels(); ++i)
    f.level.push_back(FpMat::zero(a.p, b.dim_at(i), a.dim_at(i)));
  return f;
}

namespace {

// Trims trailing zero levels and rebuilds a canonical object.
ChainObj canonical_obj(int p, std::vector<int> dims, std::vector<FpMat> diff) {
  while (!dims.empty() && dims.back() == 0) {
    dims.pop_back();
    if (!diff.empty()) diff.pop_back();
  }
  if (dims.empty()) diff.clear();
  ChainObj x;
  x.p = p;
  x.dims = std::move(dims);
  x.diff = std::move(diff);
  x.validate();
  return x;
}

ChainMor make_mor(const ChainObj& a, const ChainObj& b, std::vector<FpMat> lv) {
  ChainMor f;
  f.dom_o = a;
  f.cod_o = b;
  lv.resize(size_t(std::max(a.top(), b.top()) + 1),
            FpMat::zero(a.p, 0, 0));
  for (int i = 0; i < int(lv.size()); ++i) {
    FpMat& m = lv[size_t(i)];
    if (m.rows() != b.dim_at(i) || m.cols() != a.dim_at(i))
      m = FpMat::zero(a.p, b.dim_at(i), a.dim_at(i));
  }
  f.level = std::move(lv);
  f.validate();
  return f;
}

struct BlockLayout {
  std::vector<std::string> keys;
  std::map<std::string, int> offset;
  int total = 0;
};

BlockLayout layout(const std::vector<std::string>& keys,
                   const std::function<int(const std::string&)>& dim) {
  BlockLayout l;
  l.keys = keys;
  for (const auto& k : keys) {
    l.offset[k] = l.total;
    l.total += dim(k);
  }
  return l;
}

class ChainAmbient : public AmbientModel {
 public:
  ChainAmbient(int p, Budget safety) : p_(p), safety_(safety) {
    if (p < 2) throw ValidationError("field order must be a prime >= 2");
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) throw ValidationError(std::to_string(p) + " is not prime");
  }

  std::string name() const override { return "ch:p=" + std::to_string(p_); }

  bool valid_object(const std::string& x) const override {
    try {
      chain_obj_decode(p_, x);
      return true;
    } catch (const ValidationError&) {
      return false;
    }
  }
  bool valid_morphism(const std::string& f) const override {
    try {
      chain_mor_decode(p_, f);
      return true;
    } catch (const ValidationError&) {
      return false;
    }
  }
  std::string dom(const std::string& f) const override {
    return chain_mor_decode(p_, f).dom_o.encode();
  }
  std::string cod(const std::string& f) const override {
    return chain_mor_decode(p_, f).cod_o.encode();
  }
  std::string identity(const std::string& x) const override {
    ChainObj o = chain_obj_decode(p_, x);
    std::vector<FpMat> lv;
    for (int i = 0; i <= o.top(); ++i) lv.push_back(FpMat::identity(p_, o.dim_at(i)));
    return make_mor(o, o, std::move(lv)).encode();
  }
  std::string compose(const std::string& g, const std::string& f) const override {
    ChainMor mf = chain_mor_decode(p_, f), mg = chain_mor_decode(p_, g);
    if (mf.cod_o.encode() != mg.dom_o.encode())
      throw ValidationError("chain maps not composable: " + g + " after " + f);
    std::vector<FpMat> lv;
    int L = std::max(mf.levels(), mg.levels());
    for (int i = 0; i < L; ++i) lv.push_back(mg.at(i).mul(mf.at(i)));
    return make_mor(mf.dom_o, mg.cod_o, std::move(lv)).encode();
  }

  std::string initial_object() const override { return chain_zero(p_).encode(); }
  std::string final_object() const override { return chain_zero(p_).encode(); }
  std::string from_initial(const std::string& x) const override {
    return chain_zero_map(chain_zero(p_), chain_obj_decode(p_, x)).encode();
  }
  std::string to_final(const std::string& x) const override {
    return chain_zero_map(chain_obj_decode(p_, x), chain_zero(p_)).encode();
  }

  ColimitResult colimit(const FinCatPtr& shape, const ShapeDiagramData& d) const override;
  LimitResult limit(const FinCatPtr& shape, const ShapeDiagramData& d) const override;

  bool is_cof(const std::string& f) const override {
    ChainMor m = chain_mor_decode(p_, f);
    for (int i = 0; i < m.levels(); ++i)
      if (!m.at(i).injective()) return false;
    return true;
  }
  bool is_fib(const std::string& f) const override {
    ChainMor m = chain_mor_decode(p_, f);
    for (int i = 1; i < m.levels(); ++i)
      if (!m.at(i).surjective()) return false;
    return true;
  }
  bool is_we(const std::string& f) const override {
    ChainMor m = chain_mor_decode(p_, f);
    for (int i = 0; i <= std::max(m.dom_o.top(), m.cod_o.top()); ++i)
      if (!homology_bijective(m, i)) return false;
    return true;
  }
  bool is_iso(const std::string& f) const override {
    ChainMor m = chain_mor_decode(p_, f);
    for (int i = 0; i < m.levels(); ++i) {
      const FpMat a = m.at(i);
      if (a.rows() != a.cols() || a.rank() != a.rows()) return false;
    }
    return true;
  }

  Factorization factor_cof_acyfib(const std::string& f) const override;
  Factorization factor_acycof_fib(const std::string& f) const override;

  std::vector<std::string> enum_objects(const Budget& b) const override;
  std::vector<std::string> enum_homs(const std::string& x, const std::string& y,
                                     const Budget& b) const override;

  bool has_generating_sets() const override { return true; }
  std::vector<std::string> gen_cofibrations(const Budget& b) const override {
    std::vector<std::string> out;
    out.push_back(chain_zero_map(chain_zero(p_), chain_sphere(p_, 0)).encode());
    for (int n = 1; n <= b.max_chain_degree; ++n) {
      ChainObj s = chain_sphere(p_, n - 1), dd = chain_disk(p_, n);
      ChainMor inc = chain_zero_map(s, dd);
      inc.level[size_t(n) - 1] = FpMat::identity(p_, 1);
      inc.validate();
      out.push_back(inc.encode());
    }
    return out;
  }
  std::vector<std::string> gen_acyclic_cofibrations(const Budget& b) const override {
    std::vector<std::string> out;
    for (int n = 1; n <= b.max_chain_degree; ++n)
      out.push_back(chain_zero_map(chain_zero(p_), chain_disk(p_, n)).encode());
    return out;
  }

 private:
  bool homology_bijective(const ChainMor& m, int i) const;
  void degree_guard(int top) const {
    if (top > safety_.max_chain_degree + 8)
      throw BudgetExceeded("chain degree support " + std::to_string(top) +
                           " exceeds the safety budget");
  }

  int p_;
  Budget safety_;
};

bool ChainAmbient::homology_bijective(const ChainMor& m, int i) const {
  const ChainObj& X = m.dom_o;
  const ChainObj& Y = m.cod_o;
  int hx = X.homology_dim(i), hy = Y.homology_dim(i);
  if (hx != hy) return false;
  // Image rank of H_i(f): rank([f·K_X | B_Y]) - rank(B_Y).
  FpMat kx = (i == 0) ? FpMat::identity(p_, X.dim_at(0)) : X.d_at(i).kernel_basis();
  FpMat by = Y.d_at(i + 1);
  FpMat fk = m.at(i).mul(kx);
  int r = fk.hstack(by).rank() - by.rank();
  return r == hx;
}

ColimitResult ChainAmbient::colimit(const FinCatPtr& shape, const ShapeDiagramData& d) const {
  validate_shape_diagram(*this, shape, d);
  std::map<std::string, ChainObj> entry;
  int topdeg = -1;
  for (const auto& o : shape->objects()) {
    entry[o] = chain_obj_decode(p_, d.entries.at(o));
    topdeg = std::max(topdeg, entry[o].top());
  }
  std::map<std::string, ChainMor> edge;
  for (const auto& e : shape->nonidentity_morphisms())
    edge[e] = chain_mor_decode(p_, d.edges.at(e));

  int L = topdeg + 1;
  std::vector<BlockLayout> lay(size_t(std::max(L, 1)));
  for (int i = 0; i < L; ++i)
    lay[size_t(i)] = layout(shape->objects(),
                            [&](const std::string& o) { return entry.at(o).dim_at(i); });

  // Per degree: quotient of the direct sum by the span of
  // (include at src) - (edge map into dst), one column per source basis
  // vector of each edge.
  std::vector<FpQuotient> q;
  for (int i = 0; i < L; ++i) {
    const BlockLayout& l = lay[size_t(i)];
    int cols = 0;
    for (const auto& e : shape->nonidentity_morphisms())
      cols += entry.at(shape->src(e)).dim_at(i);
    FpMat B = FpMat::zero(p_, l.total, cols);
    int c = 0;
    for (const auto& e : shape->nonidentity_morphisms()) {
      const ChainMor& m = edge.at(e);
      int so = l.offset.at(shape->src(e)), to = l.offset.at(shape->dst(e));
      FpMat mi = m.at(i);
      for (int j = 0; j < m.dom_o.dim_at(i); ++j) {
        B.set(so + j, c, 1);
        for (int r = 0; r < mi.rows(); ++r)
          B.set(to + r, c, (B.at(to + r, c) - mi.at(r, j) % p_ + 2 * p_) % p_);
        ++c;
      }
    }
    q.push_back(column_space_quotient(B));
  }

  // Induced differential Q_{i-1} ∘ d_⊕ ∘ S_i.
  auto dsum = [&](int i) {
    const BlockLayout& lo = lay[size_t(i - 1)];
    const BlockLayout& hi = lay[size_t(i)];
    FpMat m = FpMat::zero(p_, lo.total, hi.total);
    for (const auto& o : shape->objects()) {
      FpMat dm = entry.at(o).d_at(i);
      int ro = lo.offset.at(o), co = hi.offset.at(o);
      for (int r = 0; r < dm.rows(); ++r)
        for (int cc = 0; cc < dm.cols(); ++cc) m.set(ro + r, co + cc, dm.at(r, cc));
    }
    return m;
  };

  std::vector<int> adims;
  std::vector<FpMat> adiff;
  for (int i = 0; i < L; ++i) adims.push_back(q[size_t(i)].Q.rows());
  for (int i = 1; i < L; ++i)
    adiff.push_back(q[size_t(i) - 1].Q.mul(dsum(i)).mul(q[size_t(i)].S));
  ChainObj apex = canonical_obj(p_, adims, adiff);
  degree_guard(apex.top());

  ColimitResult res;
  res.apex = apex.encode();
  for (const auto& o : shape->objects()) {
    std::vector<FpMat> lv;
    for (int i = 0; i < L; ++i) {
      const BlockLayout& l = lay[size_t(i)];
      FpMat inc = FpMat::zero(p_, l.total, entry.at(o).dim_at(i));
      for (int j = 0; j < entry.at(o).dim_at(i); ++j) inc.set(l.offset.at(o) + j, j, 1);
      lv.push_back(q[size_t(i)].Q.mul(inc));
    }
    res.legs[o] = make_mor(entry.at(o), apex, std::move(lv)).encode();
  }

  auto shape_c = shape;
  auto data = d;
  auto entries = entry;
  auto quot = q;
  auto lays = lay;
  int levels = L;
  int pp = p_;
  res.induce = [this, shape_c, data, entries, quot, lays, levels, pp, apex](
                   const std::map<std::string, std::string>& cocone,
                   const std::string& target) -> std::string {
    ChainObj t = chain_obj_decode(pp, target);
    std::map<std::string, ChainMor> legs;
    for (const auto& o : shape_c->objects()) {
      auto it = cocone.find(o);
      if (it == cocone.end()) throw ValidationError("cocone misses leg at '" + o + "'");
      ChainMor m = chain_mor_decode(pp, it->second);
      if (m.dom_o.encode() != entries.at(o).encode() || m.cod_o.encode() != t.encode())
        throw ValidationError("cocone leg at '" + o + "' has wrong endpoints");
      legs[o] = m;
    }
    for (const auto& e : shape_c->nonidentity_morphisms()) {
      std::string via = this->compose(legs.at(shape_c->dst(e)).encode(), data.edges.at(e));
      if (via != legs.at(shape_c->src(e)).encode())
        throw ValidationError("cocone does not commute along '" + e + "'");
    }
    std::vector<FpMat> lv;
    for (int i = 0; i < levels; ++i) {
      const BlockLayout& l = lays[size_t(i)];
      FpMat u = FpMat::zero(pp, t.dim_at(i), l.total);
      for (const auto& o : shape_c->objects()) {
        FpMat li = legs.at(o).at(i);
        int co = l.offset.at(o);
        for (int r = 0; r < li.rows(); ++r)
          for (int c = 0; c < li.cols(); ++c) u.set(r, co + c, li.at(r, c));
      }
      lv.push_back(u.mul(quot[size_t(i)].S));
    }
    return make_mor(apex, t, std::move(lv)).encode();
  };
  return res;
}

LimitResult ChainAmbient::limit(const FinCatPtr& shape, const ShapeDiagramData& d) const {
  validate_shape_diagram(*this, shape, d);
  std::map<std::string, ChainObj> entry;
  int topdeg = -1;
  for (const auto& o : shape->objects()) {
    entry[o] = chain_obj_decode(p_, d.entries.at(o));
    topdeg = std::max(topdeg, entry[o].top());
  }
  std::map<std::string, ChainMor> edge;
  for (const auto& e : shape->nonidentity_morphisms())
    edge[e] = chain_mor_decode(p_, d.edges.at(e));

  int L = topdeg + 1;
  std::vector<BlockLayout> lay(size_t(std::max(L, 1)));
  for (int i = 0; i < L; ++i)
    lay[size_t(i)] = layout(shape->objects(),
                            [&](const std::string& o) { return entry.at(o).dim_at(i); });

  // Kernel of x ↦ (edge(x_src) - x_dst)_edges, with the identity-on-free-rows
  // retraction R (row selection) so that R∘K = I.
  std::vector<FpMat> kmat, rmat;
  for (int i = 0; i < L; ++i) {
    const BlockLayout& l = lay[size_t(i)];
    int rows = 0;
    for (const auto& e : shape->nonidentity_morphisms())
      rows += entry.at(shape->dst(e)).dim_at(i);
    FpMat A = FpMat::zero(p_, rows, l.total);
    int r0 = 0;
    for (const auto& e : shape->nonidentity_morphisms()) {
      const ChainMor& m = edge.at(e);
      FpMat mi = m.at(i);
      int so = l.offset.at(shape->src(e)), to = l.offset.at(shape->dst(e));
      for (int r = 0; r < mi.rows(); ++r) {
        for (int c = 0; c < mi.cols(); ++c) A.set(r0 + r, so + c, mi.at(r, c));
        A.set(r0 + r, to + r, (A.at(r0 + r, to + r) + p_ - 1) % p_);
      }
      r0 += mi.rows();
    }
    std::vector<int> free_rows;
    FpMat K = A.kernel_basis(&free_rows);
    FpMat R = FpMat::zero(p_, K.cols(), l.total);
    for (int j = 0; j < K.cols(); ++j) R.set(j, free_rows[size_t(j)], 1);
    kmat.push_back(K);
    rmat.push_back(R);
  }

  auto dsum = [&](int i) {
    const BlockLayout& lo = lay[size_t(i) - 1];
    const BlockLayout& hi = lay[size_t(i)];
    FpMat m = FpMat::zero(p_, lo.total, hi.total);
    for (const auto& o : shape->objects()) {
      FpMat dm = entry.at(o).d_at(i);
      int ro = lo.offset.at(o), co = hi.offset.at(o);
      for (int r = 0; r < dm.rows(); ++r)
        for (int cc = 0; cc < dm.cols(); ++cc) m.set(ro + r, co + cc, dm.at(r, cc));
    }
    return m;
  };

  std::vector<int> adims;
  std::vector<FpMat> adiff;
  for (int i = 0; i < L; ++i) adims.push_back(kmat[size_t(i)].cols());
  for (int i = 1; i < L; ++i)
    adiff.push_back(rmat[size_t(i) - 1].mul(dsum(i)).mul(kmat[size_t(i)]));
  ChainObj apex = canonical_obj(p_, adims, adiff);
  degree_guard(apex.top());

  LimitResult res;
  res.apex = apex.encode();
  for (const auto& o : shape->objects()) {
    std::vector<FpMat> lv;
    for (int i = 0; i < L; ++i) {
      const BlockLayout& l = lay[size_t(i)];
      FpMat proj = FpMat::zero(p_, entry.at(o).dim_at(i), l.total);
      for (int j = 0; j < entry.at(o).dim_at(i); ++j) proj.set(j, l.offset.at(o) + j, 1);
      lv.push_back(proj.mul(kmat[size_t(i)]));
    }
    res.legs[o] = make_mor(apex, entry.at(o), std::move(lv)).encode();
  }

  auto shape_c = shape;
  auto data = d;
  auto entries = entry;
  auto ks = kmat;
  auto rs = rmat;
  auto lays = lay;
  int levels = L;
  int pp = p_;
  res.induce = [this, shape_c, data, entries, ks, rs, lays, levels, pp, apex](
                   const std::map<std::string, std::string>& cone,
                   const std::string& source) -> std::string {
    ChainObj s = chain_obj_decode(pp, source);
    std::map<std::string, ChainMor> legs;
    for (const auto& o : shape_c->objects()) {
      auto it = cone.find(o);
      if (it == cone.end()) throw ValidationError("cone misses leg at '" + o + "'");
      ChainMor m = chain_mor_decode(pp, it->second);
      if (m.dom_o.encode() != s.encode() || m.cod_o.encode() != entries.at(o).encode())
        throw ValidationError("cone leg at '" + o + "' has wrong endpoints");
      legs[o] = m;
    }
    for (const auto& e : shape_c->nonidentity_morphisms()) {
      std::string via = this->compose(data.edges.at(e), legs.at(shape_c->src(e)).encode());
      if (via != legs.at(shape_c->dst(e)).encode())
        throw ValidationError("cone does not commute along '" + e + "'");
    }
    std::vector<FpMat> lv;
    for (int i = 0; i < levels; ++i) {
      const BlockLayout& l = lays[size_t(i)];
      FpMat c = FpMat::zero(pp, l.total, s.dim_at(i));
      for (const auto& o : shape_c->objects()) {
        FpMat li = legs.at(o).at(i);
        int ro = l.offset.at(o);
        for (int r = 0; r < li.rows(); ++r)
          for (int cc = 0; cc < li.cols(); ++cc) c.set(ro + r, cc, li.at(r, cc));
      }
      FpMat m = rs[size_t(i)].mul(c);
      if (ks[size_t(i)].mul(m) != c)
        throw HardError("cone fails to land in the limit subspace");
      lv.push_back(m);
    }
    return make_mor(s, apex, std::move(lv)).encode();
  };
  return res;
}

Factorization ChainAmbient::factor_cof_acyfib(const std::string& f) const {
  // Mapping cylinder: C_n = X_n ⊕ X_{n-1} ⊕ Y_n with
  // d(x, x', y) = (dx - x', -dx', dy + f(x')); X includes as (x,0,0) and
  // (x, x', y) ↦ f(x) + y collapses to Y. The collapse is a surjective
  // homotopy equivalence in every degree, the inclusion a degreewise split
  // injection.
  ChainMor m = chain_mor_decode(p_, f);
  const ChainObj& X = m.dom_o;
  const ChainObj& Y = m.cod_o;
  int L = std::max(X.top() + 1, Y.top()) + 1;
  std::vector<int> cd;
  for (int i = 0; i <= L; ++i) cd.push_back(X.dim_at(i) + X.dim_at(i - 1) + Y.dim_at(i));
  std::vector<FpMat> cdiff;
  for (int i = 1; i <= L; ++i) {
    FpMat d = FpMat::zero(p_, cd[size_t(i) - 1], cd[size_t(i)]);
    FpMat dx = X.d_at(i), dxm = X.d_at(i - 1), dy = Y.d_at(i), fi = m.at(i - 1);
    int rx = 0, rxm = X.dim_at(i - 1), ry = X.dim_at(i - 1) + X.dim_at(i - 2);
    int cx = 0, cxm = X.dim_at(i), cy = X.dim_at(i) + X.dim_at(i - 1);
    for (int r = 0; r < dx.rows(); ++r)
      for (int c = 0; c < dx.cols(); ++c) d.set(rx + r, cx + c, dx.at(r, c));
    for (int j = 0; j < X.dim_at(i - 1); ++j) d.set(rx + j, cxm + j, p_ - 1);
    for (int r = 0; r < dxm.rows(); ++r)
      for (int c = 0; c < dxm.cols(); ++c)
        d.set(rxm + r, cxm + c, (p_ - dxm.at(r, c)) % p_);
    for (int r = 0; r < dy.rows(); ++r)
      for (int c = 0; c < dy.cols(); ++c) d.set(ry + r, cy + c, dy.at(r, c));
    for (int r = 0; r < fi.rows(); ++r)
      for (int c = 0; c < fi.cols(); ++c) d.set(ry + r, cxm + c, fi.at(r, c));
    cdiff.push_back(d);
  }
  ChainObj cyl = canonical_obj(p_, cd, cdiff);
  degree_guard(cyl.top());

  std::vector<FpMat> ilv;
  for (int i = 0; i <= cyl.top(); ++i) {
    FpMat inc = FpMat::zero(p_, cyl.dim_at(i), X.dim_at(i));
    for (int j = 0; j < X.dim_at(i); ++j) inc.set(j, j, 1);
    ilv.push_back(inc);
  }
  ChainMor inc = make_mor(X, cyl, std::move(ilv));

  std::vector<FpMat> plv;
  for (int i = 0; i <= std::max(cyl.top(), Y.top()); ++i) {
    FpMat pr = FpMat::zero(p_, Y.dim_at(i), cyl.dim_at(i));
    FpMat fi = m.at(i);
    for (int r = 0; r < fi.rows(); ++r)
      for (int c = 0; c < fi.cols(); ++c) pr.set(r, c, fi.at(r, c));
    int cy = X.dim_at(i) + X.dim_at(i - 1);
    for (int j = 0; j < Y.dim_at(i); ++j) pr.set(j, cy + j, 1);
    plv.push_back(pr);
  }
  ChainMor proj = make_mor(cyl, Y, std::move(plv));

  Factorization out{inc.encode(), cyl.encode(), proj.encode()};
  if (compose(out.second, out.first) != f)
    throw HardError("cylinder factorization fails to recompose");
  return out;
}

Factorization ChainAmbient::factor_acycof_fib(const std::string& f) const {
  // Adjoin a contractible complex of disks surjecting onto Y in positive
  // degrees: E_k = Y_k ⊕ Y_{k+1} (k >= 1), E_0 = Y_1, d_E(y, y') = (0, y),
  // collapse (y, y') ↦ y + dy'. The inclusion X -> X ⊕ E is an acyclic
  // cofibration, (f, collapse) a fibration.
  ChainMor m = chain_mor_decode(p_, f);
  const ChainObj& X = m.dom_o;
  const ChainObj& Y = m.cod_o;
  int L = std::max(X.top(), Y.top()) + 1;

  auto edim = [&](int k) {
    if (k < 0) return 0;
    return (k == 0) ? Y.dim_at(1) : Y.dim_at(k) + Y.dim_at(k + 1);
  };
  std::vector<int> zd;
  for (int i = 0; i <= L; ++i) zd.push_back(X.dim_at(i) + edim(i));
  std::vector<FpMat> zdiff;
  for (int i = 1; i <= L; ++i) {
    FpMat d = FpMat::zero(p_, zd[size_t(i) - 1], zd[size_t(i)]);
    FpMat dx = X.d_at(i);
    for (int r = 0; r < dx.rows(); ++r)
      for (int c = 0; c < dx.cols(); ++c) d.set(r, c, dx.at(r, c));
    // E-part: (y_i, y_{i+1}) ↦ (0, y_i) landing in the upper summand of
    // E_{i-1}; at i = 1 the target E_0 = Y_1 is exactly that summand.
    int re = X.dim_at(i - 1) + ((i - 1 == 0) ? 0 : Y.dim_at(i - 1));
    int ce = X.dim_at(i);
    for (int j = 0; j < Y.dim_at(i); ++j) d.set(re + j, ce + j, 1);
    zdiff.push_back(d);
  }
  ChainObj zobj = canonical_obj(p_, zd, zdiff);
  degree_guard(zobj.top());

  std::vector<FpMat> ilv;
  for (int i = 0; i <= zobj.top(); ++i) {
    FpMat inc = FpMat::zero(p_, zobj.dim_at(i), X.dim_at(i));
    for (int j = 0; j < X.dim_at(i); ++j) inc.set(j, j, 1);
    ilv.push_back(inc);
  }
  ChainMor inc = make_mor(X, zobj, std::move(ilv));

  std::vector<FpMat> plv;
  for (int i = 0; i <= std::max(zobj.top(), Y.top()); ++i) {
    FpMat pr = FpMat::zero(p_, Y.dim_at(i), zobj.dim_at(i));
    FpMat fi = m.at(i);
    for (int r = 0; r < fi.rows(); ++r)
      for (int c = 0; c < fi.cols(); ++c) pr.set(r, c, fi.at(r, c));
    int ce = X.dim_at(i);
    if (i >= 1)
      for (int j = 0; j < Y.dim_at(i); ++j) pr.set(j, ce + j, 1);
    // the Y_{i+1} summand maps by the differential
    FpMat dy = Y.d_at(i + 1);
    int cupper = ce + ((i == 0) ? 0 : Y.dim_at(i));
    for (int r = 0; r < dy.rows(); ++r)
      for (int c = 0; c < dy.cols(); ++c) pr.set(r, cupper + c, dy.at(r, c));
    plv.push_back(pr);
  }
  ChainMor proj = make_mor(zobj, Y, std::move(plv));

  Factorization out{inc.encode(), zobj.encode(), proj.encode()};
  if (compose(out.second, out.first) != f)
    throw HardError("disk-sum factorization fails to recompose");
  return out;
}

std::vector<std::string> ChainAmbient::enum_objects(const Budget& b) const {
  std::vector<std::string> out;
  int maxlen = b.max_chain_degree + 1;
  std::vector<int> dims;
  // Enumerate dimension vectors (trailing entry nonzero) of length <= maxlen.
  std::function<void(int)> rec_dims = [&](int len) {
    if (!dims.empty() && dims.back() != 0) {
      // enumerate differential towers level by level
      std::vector<FpMat> tower;
      std::function<void(int)> rec_diff = [&](int lvl) {
        if (lvl == int(dims.size())) {
          ChainObj x;
          x.p = p_;
          x.dims = dims;
          x.diff = tower;
          out.push_back(x.encode());
          if (long(out.size()) > b.max_objects)
            throw BudgetExceeded("chain object enumeration exceeds budget");
          return;
        }
        int rows = dims[size_t(lvl) - 1], cols = dims[size_t(lvl)];
        // columns must land in ker of the previous differential
        FpMat prev = (lvl >= 2) ? tower[size_t(lvl) - 2]
                                : FpMat::zero(p_, 0, rows);
        FpMat kb = (lvl >= 2) ? prev.kernel_basis() : FpMat::identity(p_, rows);
        long combos = 1;
        for (int i = 0; i < kb.cols() * cols; ++i) {
          combos *= p_;
          if (combos > b.max_tuples) throw BudgetExceeded("differential enumeration too large");
        }
        std::vector<int> coef(size_t(kb.cols()) * size_t(cols), 0);
        for (long k = 0; k < combos; ++k) {
          FpMat d = FpMat::zero(p_, rows, cols);
          for (int c = 0; c < cols; ++c)
            for (int kc = 0; kc < kb.cols(); ++kc)
              for (int r = 0; r < rows; ++r)
                d.set(r, c,
                      (d.at(r, c) + coef[size_t(c) * size_t(kb.cols()) + size_t(kc)] *
                                        kb.at(r, kc)) %
                          p_);
          tower.push_back(d);
          rec_diff(lvl + 1);
          tower.pop_back();
          for (size_t i = 0; i < coef.size(); ++i) {
            if (++coef[i] < p_) break;
            coef[i] = 0;
          }
        }
      };
      rec_diff(1);
    } else if (dims.empty()) {
      out.push_back(chain_zero(p_).encode());
    }
    if (len == maxlen) return;
    for (int v = 0; v <= b.max_chain_dim; ++v) {
      dims.push_back(v);
      rec_dims(len + 1);
      dims.pop_back();
    }
  };
  rec_dims(0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> ChainAmbient::enum_homs(const std::string& x, const std::string& y,
                                                 const Budget& b) const {
  ChainObj X = chain_obj_decode(p_, x), Y = chain_obj_decode(p_, y);
  int L = std::max(X.top(), Y.top()) + 1;
  // Unknowns: entries of every level map; constraints: the chain condition
  // per positive level. Solutions = kernel of the constraint matrix.
  std::vector<int> var_off(size_t(L) + 1, 0);
  for (int i = 0; i < L; ++i)
    var_off[size_t(i) + 1] = var_off[size_t(i)] + Y.dim_at(i) * X.dim_at(i);
  int nvars = var_off[size_t(L)];
  int nrows = 0;
  for (int i = 1; i < L; ++i) nrows += Y.dim_at(i - 1) * X.dim_at(i);
  FpMat A = FpMat::zero(p_, nrows, nvars);
  int r0 = 0;
  for (int i = 1; i < L; ++i) {
    FpMat dy = Y.d_at(i), dx = X.d_at(i);
    // d_Y ∘ f_i - f_{i-1} ∘ d_X = 0; rows indexed by (target basis r of
    // Y_{i-1}, source basis c of X_i).
    for (int r = 0; r < Y.dim_at(i - 1); ++r)
      for (int c = 0; c < X.dim_at(i); ++c) {
        int row = r0 + r * X.dim_at(i) + c;
        for (int k = 0; k < Y.dim_at(i); ++k)
          A.set(row, var_off[size_t(i)] + k * X.dim_at(i) + c, dy.at(r, k));
        for (int k = 0; k < X.dim_at(i - 1); ++k) {
          int col = var_off[size_t(i) - 1] + r * X.dim_at(i - 1) + k;
          A.set(row, col, (A.at(row, col) + p_ - dx.at(k, c)) % p_);
        }
      }
    r0 += Y.dim_at(i - 1) * X.dim_at(i);
  }
  FpMat K = A.kernel_basis();
  if (K.cols() > b.max_hom_space_dim)
    throw BudgetExceeded("hom space dimension " + std::to_string(K.cols()) +
                         " exceeds budget between " + x + " and " + y);
  long count = 1;
  for (int i = 0; i < K.cols(); ++i) {
    count *= p_;
    if (count > b.max_hom_size) throw BudgetExceeded("hom-set enumeration exceeds budget");
  }
  std::vector<std::string> out;
  std::vector<int> coef(size_t(K.cols()), 0);
  for (long n = 0; n < count; ++n) {
    std::vector<int> v(size_t(nvars), 0);
    for (int j = 0; j < K.cols(); ++j) {
      if (coef[size_t(j)] == 0) continue;
      for (int i = 0; i < nvars; ++i) v[size_t(i)] = (v[size_t(i)] + coef[size_t(j)] * K.at(i, j)) % p_;
    }
    ChainMor f;
    f.dom_o = X;
    f.cod_o = Y;
    for (int i = 0; i < L; ++i) {
      FpMat m = FpMat::zero(p_, Y.dim_at(i), X.dim_at(i));
      for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
          m.set(r, c, v[size_t(var_off[size_t(i)] + r * X.dim_at(i) + c)]);
      f.level.push_back(m);
    }
    out.push_back(f.encode());
    for (size_t j = 0; j < coef.size(); ++j) {
      if (++coef[j] < p_) break;
      coef[j] = 0;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

AmbientPtr chain_complexes(int p, const Budget& safety) {
  return std::make_shared<ChainAmbient>(p, safety);
}

}  // namespace modred
