#include "modred/ktheory.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "modred/comparisons.hpp"

namespace modred {

namespace {

std::string gobj(int i, int j) { return std::to_string(i) + std::to_string(j); }

std::string gmor(int i, int j, int k, int l) { return "g_" + gobj(i, j) + "_" + gobj(k, l); }

std::string cobj(int j) { return std::to_string(j); }

std::string level_key(int n, int m) { return std::to_string(n) + "," + std::to_string(m); }

std::string map_key(int n, int m, int i) { return level_key(n, m) + "," + std::to_string(i); }

bool parse_two_ints(const std::string& name, const std::string& prefix, int& a, int& b) {
  if (name.rfind(prefix, 0) != 0) return false;
  std::string tail = name.substr(prefix.size());
  auto us = tail.find('_');
  if (us == std::string::npos) return false;
  try {
    a = std::stoi(tail.substr(0, us));
    b = std::stoi(tail.substr(us + 1));
  } catch (const std::exception&) {
    return false;
  }
  return a >= 0 && b >= 0;
}

int chain_top_of(const FinCatPtr& shape) {
  const std::string prefix = "chain_";
  const std::string& name = shape->name();
  if (name.rfind(prefix, 0) == 0) {
    try {
      int t = std::stoi(name.substr(prefix.size()));
      if (t >= 0) return t;
    } catch (const std::exception&) {
    }
  }
  throw ValidationError("expected a chain shape, got '" + name + "'");
}

void grid_size_of(const FinCatPtr& shape, int& n, int& m) {
  if (!parse_two_ints(shape->name(), "grid_", n, m))
    throw ValidationError("expected a rectangle shape, got '" + shape->name() + "'");
}

ReedyStructure chain_structure_of(const FinCatPtr& ch) {
  int top = chain_top_of(ch);
  ReedyStructure r;
  r.base = ch;
  for (int i = 0; i <= top; ++i) r.degree[cobj(i)] = i;
  for (const auto& id : ch->nonidentity_morphisms()) r.raising.insert(id);
  for (const auto& o : ch->objects()) {
    r.raising.insert(FinCategory::identity_id(o));
    r.lowering.insert(FinCategory::identity_id(o));
  }
  return r;
}

}  // namespace

FinCatPtr grid_shape(int rows_top, int cols_top) {
  if (rows_top < 0 || cols_top < 0 || rows_top > 9 || cols_top > 9)
    throw ValidationError("rectangle sizes must lie in [0, 9]");
  static std::map<std::pair<int, int>, FinCatPtr> cache;
  auto key = std::make_pair(rows_top, cols_top);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, grid_category(rows_top, cols_top)).first;
  return it->second;
}

FinCatPtr chain_shape(int top) {
  if (top < 0 || top > 9) throw ValidationError("chain lengths must lie in [0, 9]");
  static std::map<int, FinCatPtr> cache;
  auto it = cache.find(top);
  if (it == cache.end()) it = cache.emplace(top, chain_category(top)).first;
  return it->second;
}

std::vector<std::string> grid_marked(int rows_top, int cols_top) {
  std::set<std::string> s;
  for (int j = 0; j <= cols_top; ++j) s.insert(gobj(0, j));
  for (int i = 0; i <= rows_top; ++i) s.insert(gobj(i, 0));
  return std::vector<std::string>(s.begin(), s.end());
}

ReedyStructure grid_structure(int rows_top, int cols_top) {
  ReedyStructure r;
  r.base = grid_shape(rows_top, cols_top);
  for (const auto& o : r.base->objects()) r.degree[o] = (o[0] - '0') + (o[1] - '0');
  for (const auto& id : r.base->nonidentity_morphisms()) r.raising.insert(id);
  for (const auto& o : r.base->objects()) {
    r.raising.insert(FinCategory::identity_id(o));
    r.lowering.insert(FinCategory::identity_id(o));
  }
  return r;
}

// -------- rectangle data --------

namespace {

struct GridData {
  int n = 0, m = 0;
  std::vector<std::vector<std::string>> ent;  // (n+1) x (m+1)
  std::vector<std::vector<std::string>> hor;  // (n+1) x m ; hor[i][j] : ent[i][j] -> ent[i][j+1]
  std::vector<std::vector<std::string>> ver;  // n x (m+1) ; ver[i][j] : ent[i][j] -> ent[i+1][j]
};

GridData data_of(const Diagram& g) {
  GridData d;
  grid_size_of(g.shape, d.n, d.m);
  d.ent.assign(d.n + 1, std::vector<std::string>(d.m + 1));
  d.hor.assign(d.n + 1, std::vector<std::string>(d.m));
  d.ver.assign(d.n, std::vector<std::string>(d.m + 1));
  for (int i = 0; i <= d.n; ++i)
    for (int j = 0; j <= d.m; ++j) d.ent[i][j] = g.at(gobj(i, j));
  for (int i = 0; i <= d.n; ++i)
    for (int j = 0; j < d.m; ++j) d.hor[i][j] = g.edge(gmor(i, j, i, j + 1));
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j <= d.m; ++j) d.ver[i][j] = g.edge(gmor(i, j, i + 1, j));
  return d;
}

Diagram diagram_of(const AmbientPtr& amb, const GridData& d) {
  ShapeDiagramData data;
  for (int i = 0; i <= d.n; ++i)
    for (int j = 0; j <= d.m; ++j) data.entries[gobj(i, j)] = d.ent[i][j];
  for (int i = 0; i <= d.n; ++i)
    for (int j = 0; j <= d.m; ++j)
      for (int k = i; k <= d.n; ++k)
        for (int l = j; l <= d.m; ++l) {
          if (i == k && j == l) continue;
          std::string cur = amb->identity(d.ent[i][j]);
          for (int r = i; r < k; ++r) cur = amb->compose(d.ver[r][j], cur);
          for (int c = j; c < l; ++c) cur = amb->compose(d.hor[k][c], cur);
          data.edges[gmor(i, j, k, l)] = cur;
        }
  Diagram g{grid_shape(d.n, d.m), amb, std::move(data)};
  g.validate();
  return g;
}

GridData transpose(const GridData& d) {
  GridData t;
  t.n = d.m;
  t.m = d.n;
  t.ent.assign(t.n + 1, std::vector<std::string>(t.m + 1));
  t.hor.assign(t.n + 1, std::vector<std::string>(t.m));
  t.ver.assign(t.n, std::vector<std::string>(t.m + 1));
  for (int i = 0; i <= t.n; ++i)
    for (int j = 0; j <= t.m; ++j) t.ent[i][j] = d.ent[j][i];
  for (int i = 0; i <= t.n; ++i)
    for (int j = 0; j < t.m; ++j) t.hor[i][j] = d.ver[j][i];
  for (int i = 0; i < t.n; ++i)
    for (int j = 0; j <= t.m; ++j) t.ver[i][j] = d.hor[j][i];
  return t;
}

// Deletes column i, composing through it.
GridData col_face(const AmbientModel& amb, const GridData& d, int i) {
  if (d.m < 1) throw ValidationError("a face needs at least two lines in its direction");
  if (i < 0 || i > d.m) throw ValidationError("face index out of range");
  GridData r;
  r.n = d.n;
  r.m = d.m - 1;
  r.ent.assign(r.n + 1, std::vector<std::string>(r.m + 1));
  r.hor.assign(r.n + 1, std::vector<std::string>(r.m));
  r.ver.assign(r.n, std::vector<std::string>(r.m + 1));
  auto keep = [&](int jj) { return jj < i ? jj : jj + 1; };
  for (int row = 0; row <= r.n; ++row) {
    for (int jj = 0; jj <= r.m; ++jj) r.ent[row][jj] = d.ent[row][keep(jj)];
    for (int jj = 0; jj < r.m; ++jj) {
      if (jj <= i - 2)
        r.hor[row][jj] = d.hor[row][jj];
      else if (jj == i - 1)
        r.hor[row][jj] = amb.compose(d.hor[row][i], d.hor[row][i - 1]);
      else
        r.hor[row][jj] = d.hor[row][jj + 1];
    }
  }
  for (int row = 0; row < r.n; ++row)
    for (int jj = 0; jj <= r.m; ++jj) r.ver[row][jj] = d.ver[row][keep(jj)];
  return r;
}

// Duplicates column i, inserting identities.
GridData col_degen(const AmbientModel& amb, const GridData& d, int i) {
  if (i < 0 || i > d.m) throw ValidationError("degeneracy index out of range");
  GridData r;
  r.n = d.n;
  r.m = d.m + 1;
  r.ent.assign(r.n + 1, std::vector<std::string>(r.m + 1));
  r.hor.assign(r.n + 1, std::vector<std::string>(r.m));
  r.ver.assign(r.n, std::vector<std::string>(r.m + 1));
  auto back = [&](int jj) { return jj <= i ? jj : jj - 1; };
  for (int row = 0; row <= r.n; ++row) {
    for (int jj = 0; jj <= r.m; ++jj) r.ent[row][jj] = d.ent[row][back(jj)];
    for (int jj = 0; jj < r.m; ++jj) {
      if (jj < i)
        r.hor[row][jj] = d.hor[row][jj];
      else if (jj == i)
        r.hor[row][jj] = amb.identity(d.ent[row][i]);
      else
        r.hor[row][jj] = d.hor[row][jj - 1];
    }
  }
  for (int row = 0; row < r.n; ++row)
    for (int jj = 0; jj <= r.m; ++jj) r.ver[row][jj] = d.ver[row][back(jj)];
  return r;
}

// Prepends a constant row on the initial object.
GridData row_pad_front(const AmbientPtr& amb, const GridData& d) {
  GridData r;
  r.n = d.n + 1;
  r.m = d.m;
  std::string init = amb->initial_object();
  r.ent.push_back(std::vector<std::string>(d.m + 1, init));
  for (const auto& row : d.ent) r.ent.push_back(row);
  r.hor.push_back(std::vector<std::string>(d.m, amb->identity(init)));
  for (const auto& row : d.hor) r.hor.push_back(row);
  std::vector<std::string> v0(d.m + 1);
  for (int j = 0; j <= d.m; ++j) v0[j] = amb->from_initial(d.ent[0][j]);
  r.ver.push_back(std::move(v0));
  for (const auto& row : d.ver) r.ver.push_back(row);
  return r;
}

// Appends a constant row on the final object.
GridData row_pad_back(const AmbientPtr& amb, const GridData& d) {
  GridData r;
  r.n = d.n + 1;
  r.m = d.m;
  std::string fin = amb->final_object();
  r.ent = d.ent;
  r.ent.push_back(std::vector<std::string>(d.m + 1, fin));
  r.hor = d.hor;
  r.hor.push_back(std::vector<std::string>(d.m, amb->identity(fin)));
  r.ver = d.ver;
  std::vector<std::string> vn(d.m + 1);
  for (int j = 0; j <= d.m; ++j) vn[j] = amb->to_final(d.ent[d.n][j]);
  r.ver.push_back(std::move(vn));
  return r;
}

using Mat = std::vector<std::vector<std::string>>;

Mat comps_of(const DiagramMap& f, int n, int m) {
  Mat c(n + 1, std::vector<std::string>(m + 1));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= m; ++j) c[i][j] = f.at(gobj(i, j));
  return c;
}

Mat mat_transpose(const Mat& c) {
  Mat t(c[0].size(), std::vector<std::string>(c.size()));
  for (int i = 0; i < (int)c.size(); ++i)
    for (int j = 0; j < (int)c[i].size(); ++j) t[j][i] = c[i][j];
  return t;
}

Mat mat_drop_col(const Mat& c, int i) {
  Mat r(c.size(), std::vector<std::string>(c[0].size() - 1));
  for (int row = 0; row < (int)c.size(); ++row)
    for (int jj = 0; jj < (int)r[row].size(); ++jj)
      r[row][jj] = c[row][jj < i ? jj : jj + 1];
  return r;
}

Mat mat_dup_col(const Mat& c, int i) {
  Mat r(c.size(), std::vector<std::string>(c[0].size() + 1));
  for (int row = 0; row < (int)c.size(); ++row)
    for (int jj = 0; jj < (int)r[row].size(); ++jj)
      r[row][jj] = c[row][jj <= i ? jj : jj - 1];
  return r;
}

DiagramMap rebuild_map(const AmbientPtr& amb, const GridData& sd, const GridData& dd,
                       const Mat& c) {
  std::map<std::string, std::string> comps;
  for (int i = 0; i <= sd.n; ++i)
    for (int j = 0; j <= sd.m; ++j) comps[gobj(i, j)] = c[i][j];
  DiagramMap f{diagram_of(amb, sd), diagram_of(amb, dd), std::move(comps)};
  f.validate();
  return f;
}

}  // namespace

Diagram grid_from_rows(const AmbientPtr& ambient, const std::vector<Diagram>& rows,
                       const std::vector<std::map<std::string, std::string>>& verticals) {
  if (rows.empty()) throw ValidationError("at least one row is required");
  if (verticals.size() + 1 != rows.size())
    throw ValidationError("need exactly one vertical map between each pair of consecutive rows");
  int cols = chain_top_of(rows[0].shape);
  GridData d;
  d.n = (int)rows.size() - 1;
  d.m = cols;
  for (const auto& r : rows) {
    if (chain_top_of(r.shape) != cols)
      throw ValidationError("all rows must share one chain shape");
    if (r.ambient->name() != ambient->name())
      throw ValidationError("all rows must live in the given ambient category");
  }
  d.ent.assign(d.n + 1, std::vector<std::string>(d.m + 1));
  d.hor.assign(d.n + 1, std::vector<std::string>(d.m));
  d.ver.assign(d.n, std::vector<std::string>(d.m + 1));
  for (int i = 0; i <= d.n; ++i) {
    for (int j = 0; j <= d.m; ++j) d.ent[i][j] = rows[i].at(cobj(j));
    for (int j = 0; j < d.m; ++j) d.hor[i][j] = rows[i].edge("g_" + cobj(j) + "_" + cobj(j + 1));
  }
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j <= d.m; ++j) {
      auto it = verticals[i].find(cobj(j));
      if (it == verticals[i].end())
        throw ValidationError("vertical map " + std::to_string(i) + " misses position " + cobj(j));
      d.ver[i][j] = it->second;
    }
  return diagram_of(ambient, d);
}

std::string grid_encode(const Diagram& g) {
  int n = 0, m = 0;
  grid_size_of(g.shape, n, m);
  std::ostringstream os;
  os << "g" << n << "x" << m << "(";
  for (const auto& o : g.shape->objects()) os << o << "=" << g.at(o) << ";";
  os << "#";
  for (const auto& id : g.shape->nonidentity_morphisms()) os << id << "=" << g.edge(id) << ";";
  os << ")";
  return os.str();
}

Diagram grid_decode(const AmbientPtr& ambient, const std::string& enc) {
  auto fail = [&](const std::string& why) -> ValidationError {
    return ValidationError("bad rectangle encoding (" + why + "): " + enc);
  };
  if (enc.size() < 6 || enc[0] != 'g' || enc.back() != ')') throw fail("frame");
  auto lp = enc.find('(');
  if (lp == std::string::npos) throw fail("frame");
  std::string head = enc.substr(1, lp - 1);
  auto xs = head.find('x');
  if (xs == std::string::npos) throw fail("size");
  int n = 0, m = 0;
  try {
    n = std::stoi(head.substr(0, xs));
    m = std::stoi(head.substr(xs + 1));
  } catch (const std::exception&) {
    throw fail("size");
  }
  if (n < 0 || m < 0) throw fail("size");
  std::string body = enc.substr(lp + 1, enc.size() - lp - 2);
  auto hash = body.find('#');
  if (hash == std::string::npos) throw fail("sections");
  ShapeDiagramData data;
  auto parse_section = [&](const std::string& sec, std::map<std::string, std::string>& into) {
    std::size_t pos = 0;
    while (pos < sec.size()) {
      auto semi = sec.find(';', pos);
      if (semi == std::string::npos) throw fail("missing terminator");
      std::string item = sec.substr(pos, semi - pos);
      auto eq = item.find('=');
      if (eq == std::string::npos) throw fail("missing '='");
      into[item.substr(0, eq)] = item.substr(eq + 1);
      pos = semi + 1;
    }
  };
  parse_section(body.substr(0, hash), data.entries);
  parse_section(body.substr(hash + 1), data.edges);
  Diagram g{grid_shape(n, m), ambient, std::move(data)};
  g.validate();
  return g;
}

Diagram grid_h_face(const Diagram& g, int i) {
  return diagram_of(g.ambient, col_face(*g.ambient, data_of(g), i));
}

Diagram grid_v_face(const Diagram& g, int i) {
  return diagram_of(g.ambient, transpose(col_face(*g.ambient, transpose(data_of(g)), i)));
}

Diagram grid_h_degen(const Diagram& g, int i) {
  return diagram_of(g.ambient, col_degen(*g.ambient, data_of(g), i));
}

Diagram grid_v_degen(const Diagram& g, int i) {
  return diagram_of(g.ambient, transpose(col_degen(*g.ambient, transpose(data_of(g)), i)));
}

Diagram grid_h_pad_front(const Diagram& g) {
  return diagram_of(g.ambient, transpose(row_pad_front(g.ambient, transpose(data_of(g)))));
}

Diagram grid_h_pad_back(const Diagram& g) {
  return diagram_of(g.ambient, transpose(row_pad_back(g.ambient, transpose(data_of(g)))));
}

Diagram grid_v_pad_front(const Diagram& g) {
  return diagram_of(g.ambient, row_pad_front(g.ambient, data_of(g)));
}

Diagram grid_v_pad_back(const Diagram& g) {
  return diagram_of(g.ambient, row_pad_back(g.ambient, data_of(g)));
}

DiagramMap grid_map_h_face(const DiagramMap& f, int i) {
  GridData s = data_of(f.src), d = data_of(f.dst);
  const AmbientModel& amb = *f.src.ambient;
  if (s.m < 1) throw ValidationError("a face needs at least two lines in its direction");
  if (i < 0 || i > s.m) throw ValidationError("face index out of range");
  return rebuild_map(f.src.ambient, col_face(amb, s, i), col_face(amb, d, i),
                     mat_drop_col(comps_of(f, s.n, s.m), i));
}

DiagramMap grid_map_v_face(const DiagramMap& f, int i) {
  GridData s = data_of(f.src), d = data_of(f.dst);
  const AmbientModel& amb = *f.src.ambient;
  if (s.n < 1) throw ValidationError("a face needs at least two lines in its direction");
  if (i < 0 || i > s.n) throw ValidationError("face index out of range");
  return rebuild_map(f.src.ambient, transpose(col_face(amb, transpose(s), i)),
                     transpose(col_face(amb, transpose(d), i)),
                     mat_transpose(mat_drop_col(mat_transpose(comps_of(f, s.n, s.m)), i)));
}

DiagramMap grid_map_h_degen(const DiagramMap& f, int i) {
  GridData s = data_of(f.src), d = data_of(f.dst);
  const AmbientModel& amb = *f.src.ambient;
  if (i < 0 || i > s.m) throw ValidationError("degeneracy index out of range");
  return rebuild_map(f.src.ambient, col_degen(amb, s, i), col_degen(amb, d, i),
                     mat_dup_col(comps_of(f, s.n, s.m), i));
}

DiagramMap grid_map_v_degen(const DiagramMap& f, int i) {
  GridData s = data_of(f.src), d = data_of(f.dst);
  const AmbientModel& amb = *f.src.ambient;
  if (i < 0 || i > s.n) throw ValidationError("degeneracy index out of range");
  return rebuild_map(f.src.ambient, transpose(col_degen(amb, transpose(s), i)),
                     transpose(col_degen(amb, transpose(d), i)),
                     mat_transpose(mat_dup_col(mat_transpose(comps_of(f, s.n, s.m)), i)));
}

DiagramMap grid_map_v_pad_front(const DiagramMap& f) {
  GridData s = data_of(f.src), d = data_of(f.dst);
  const AmbientPtr& amb = f.src.ambient;
  Mat c = comps_of(f, s.n, s.m);
  Mat c2;
  c2.push_back(std::vector<std::string>(s.m + 1, amb->identity(amb->initial_object())));
  for (const auto& row : c) c2.push_back(row);
  return rebuild_map(amb, row_pad_front(amb, s), row_pad_front(amb, d), c2);
}

DiagramMap grid_map_v_pad_back(const DiagramMap& f) {
  GridData s = data_of(f.src), d = data_of(f.dst);
  const AmbientPtr& amb = f.src.ambient;
  Mat c2 = comps_of(f, s.n, s.m);
  c2.push_back(std::vector<std::string>(s.m + 1, amb->identity(amb->final_object())));
  return rebuild_map(amb, row_pad_back(amb, s), row_pad_back(amb, d), c2);
}

DiagramMap grid_map_h_pad_front(const DiagramMap& f) {
  GridData s = data_of(f.src), d = data_of(f.dst);
  const AmbientPtr& amb = f.src.ambient;
  Mat ct = mat_transpose(comps_of(f, s.n, s.m));
  Mat c2;
  c2.push_back(std::vector<std::string>(s.n + 1, amb->identity(amb->initial_object())));
  for (const auto& row : ct) c2.push_back(row);
  return rebuild_map(amb, transpose(row_pad_front(amb, transpose(s))),
                     transpose(row_pad_front(amb, transpose(d))), mat_transpose(c2));
}

DiagramMap grid_map_h_pad_back(const DiagramMap& f) {
  GridData s = data_of(f.src), d = data_of(f.dst);
  const AmbientPtr& amb = f.src.ambient;
  Mat c2 = mat_transpose(comps_of(f, s.n, s.m));
  c2.push_back(std::vector<std::string>(s.n + 1, amb->identity(amb->final_object())));
  return rebuild_map(amb, transpose(row_pad_back(amb, transpose(s))),
                     transpose(row_pad_back(amb, transpose(d))), mat_transpose(c2));
}

// -------- subcategories --------

Budget WaldhausenSubcat::tuned(const Budget& b) const { return tune ? tune(b) : b; }

std::vector<std::string> WaldhausenSubcat::enumerate(const Budget& b) const {
  std::vector<std::string> out;
  for (const auto& x : ambient->enum_objects(tuned(b)))
    if (member(x)) out.push_back(x);
  return out;
}

WaldhausenSubcat degree_zero_complexes(const AmbientPtr& chains, int max_dim) {
  if (chains->initial_object() != "ch()")
    throw ValidationError("degree_zero_complexes needs a chain-complex ambient category");
  WaldhausenSubcat u;
  u.ambient = chains;
  u.label = max_dim < 0 ? "degree-0 complexes"
                        : "degree-0 complexes of dimension <= " + std::to_string(max_dim);
  u.zero = chains->initial_object();
  AmbientPtr amb = chains;
  u.member = [amb, max_dim](const std::string& x) {
    if (!amb->valid_object(x)) return false;
    if (x.rfind("ch(", 0) != 0 || x.back() != ')') return false;
    std::string inner = x.substr(3, x.size() - 4);
    if (inner.empty()) return true;  // the zero complex
    if (inner.find(',') != std::string::npos || inner.find('|') != std::string::npos)
      return false;  // support above degree 0
    for (char c : inner)
      if (c < '0' || c > '9') return false;
    return max_dim < 0 || std::stoi(inner) <= max_dim;
  };
  u.tune = [max_dim](const Budget& b) {
    Budget t = b;
    t.max_chain_degree = 0;
    if (max_dim >= 0) t.max_chain_dim = std::min(b.max_chain_dim, max_dim);
    return t;
  };
  return u;
}

WaldhausenSubcat zero_object_only(const AmbientPtr& m) {
  WaldhausenSubcat u;
  u.ambient = m;
  u.label = "zero object only";
  u.zero = m->initial_object();
  std::string z = u.zero;
  u.member = [z](const std::string& x) { return x == z; };
  return u;
}

CheckReport waldhausen_check(const WaldhausenSubcat& u, const Budget& b) {
  CheckReport rep{"subcategory check (" + u.label + ")"};
  const AmbientModel& amb = *u.ambient;
  bool pointed = amb.initial_object() == amb.final_object();
  rep.add("ambient is pointed (initial = final object)", pointed,
          pointed ? "" : "initial " + amb.initial_object() + " vs final " + amb.final_object());
  bool zero_ok = u.member(u.zero) && u.zero == amb.initial_object();
  rep.add("distinguished point is the initial object and a member", zero_ok,
          zero_ok ? "" : u.zero);
  std::vector<std::string> members = u.enumerate(b);
  {
    long bad = 0;
    std::string wit;
    for (const auto& x : members)
      if (!amb.is_cof(amb.from_initial(x))) {
        if (bad == 0) wit = x;
        ++bad;
      }
    rep.add("members are cofibrant (" + std::to_string(members.size()) + " members)", bad == 0,
            wit);
  }
  long scanned = 0, spans = 0, bad = 0;
  bool capped = false;
  std::string wit;
  for (const auto& a : members) {
    for (const auto& c : members) {
      for (const auto& bb : members) {
        if (capped) break;
        for (const auto& f : amb.enum_homs(a, c, b)) {
          if (capped) break;
          for (const auto& g : amb.enum_homs(a, bb, b)) {
            if (scanned >= b.max_search) {
              capped = true;
              break;
            }
            ++scanned;
            if (!amb.is_cof(f) && !amb.is_cof(g)) continue;
            ++spans;
            std::string p = span_pushout(u.ambient, a, c, bb, f, g).apex;
            if (!u.member(p)) {
              if (bad == 0)
                wit = "pushout of " + c + " <-[" + f + "]- " + a + " -[" + g + "]-> " + bb +
                      " is " + p + ", not a member";
              ++bad;
            }
          }
        }
      }
      if (capped) break;
    }
    if (capped) break;
  }
  rep.add("pushouts along a cofibration leg stay members (" + std::to_string(spans) + " spans" +
              (capped ? ", capped" : "") + ")",
          bad == 0, bad == 0 ? "" : wit + (bad > 1 ? " (+" + std::to_string(bad - 1) + " more)" : ""));
  return rep;
}

// -------- cofibration chains --------

bool thomason_w(const DiagramMap& f) {
  f.validate();
  int top = chain_top_of(f.src.shape);
  ReedyStructure r = chain_structure_of(f.src.shape);
  const AmbientModel& amb = *f.src.ambient;
  for (int i = 1; i <= top; ++i)
    if (!amb.is_we(latching_of_map(r, f, cobj(i)).relative)) return false;
  return true;
}

bool thomason_wbar(const DiagramMap& f, const Budget& b) {
  f.validate();
  ReedyStructure r = chain_structure_of(f.src.shape);
  ModelAssignment assign(f.src.ambient);
  return classify(r, {"0"}, assign, f, Side::Left, b).classes.cof;
}

TLevel t_level(const AmbientPtr& m, const WaldhausenSubcat& u, int n, const Budget& b) {
  if (n < 0) throw ValidationError("chain length must be nonnegative");
  FinCatPtr shape = chain_shape(n);
  ReedyStructure r = chain_structure_of(shape);
  std::vector<std::string> all = shape->objects();
  ModelAssignment assign(m);
  std::map<std::string, Diagram> found;
  EnumStats st;
  for_each_diagram(
      *m, shape, u.tuned(b),
      [&](const ShapeDiagramData& dd) {
        for (const auto& [o, x] : dd.entries)
          if (!u.member(x)) return true;
        Diagram x{shape, m, dd};
        if (classify(r, all, assign, map_from_initial(x), Side::Left, b).classes.cof)
          found.emplace(nerve_encode(x), x);
        return true;
      },
      st);
  if (st.capped)
    throw BudgetExceeded("cofibration chain enumeration at length " + std::to_string(n) +
                         " was cut short");
  TLevel out;
  out.n = n;
  out.ambient = m;
  for (const auto& [id, x] : found) {
    out.ids.push_back(id);
    out.objects.push_back(x);
  }
  return out;
}

// -------- truncated families --------

namespace {

struct BuiltLevel {
  int n = 0, m = 0;
  std::vector<std::string> ids;
  std::vector<GridData> gds;
  std::map<std::string, int> index;
};

void insert_entry(BuiltLevel& lv, const std::string& id, const GridData& gd, const Budget& b) {
  if (lv.index.count(id)) throw HardError("duplicate rectangle encoding: " + id);
  if ((long)lv.index.size() >= b.max_diagrams)
    throw BudgetExceeded("level (" + level_key(lv.n, lv.m) + ") exceeds the diagram budget");
  lv.index[id] = 0;  // fixed after sorting
  lv.ids.push_back(id);
  lv.gds.push_back(gd);
}

void finish_level(BuiltLevel& lv) {
  std::vector<int> order(lv.ids.size());
  for (int i = 0; i < (int)order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int c) { return lv.ids[a] < lv.ids[c]; });
  std::vector<std::string> ids;
  std::vector<GridData> gds;
  for (int t : order) {
    ids.push_back(lv.ids[t]);
    gds.push_back(lv.gds[t]);
  }
  lv.ids = std::move(ids);
  lv.gds = std::move(gds);
  lv.index.clear();
  for (int i = 0; i < (int)lv.ids.size(); ++i) lv.index[lv.ids[i]] = i;
}

struct LadderPool {
  std::vector<Diagram> diagrams;
  std::vector<std::vector<std::string>> ent;
  std::vector<std::vector<std::string>> hor;
};

LadderPool ladder_pool(const AmbientPtr& m, const WaldhausenSubcat& u, int cols,
                       const Budget& b) {
  LadderPool p;
  FinCatPtr shape = chain_shape(cols);
  EnumStats st;
  for_each_diagram(
      *m, shape, u.tuned(b),
      [&](const ShapeDiagramData& dd) {
        for (const auto& [o, x] : dd.entries)
          if (!u.member(x)) return true;
        Diagram x{shape, m, dd};
        std::vector<std::string> ent(cols + 1), hor(cols);
        for (int j = 0; j <= cols; ++j) ent[j] = x.at(cobj(j));
        for (int j = 0; j < cols; ++j) hor[j] = x.edge("g_" + cobj(j) + "_" + cobj(j + 1));
        p.diagrams.push_back(std::move(x));
        p.ent.push_back(std::move(ent));
        p.hor.push_back(std::move(hor));
        return true;
      },
      st);
  if (st.capped)
    throw BudgetExceeded("ladder enumeration at width " + std::to_string(cols) +
                         " was cut short");
  return p;
}

// Route one: enumerate member-entry rectangles and keep those whose
// from-initial map is a cofibration in the first-row-and-column structure.
BuiltLevel evcof_level(const AmbientPtr& m, const WaldhausenSubcat& u, int rows, int cols,
                       const Budget& b, const LadderPool& pool) {
  BuiltLevel lv;
  lv.n = rows;
  lv.m = cols;
  ReedyStructure rs = grid_structure(rows, cols);
  std::vector<std::string> marked = grid_marked(rows, cols);
  ModelAssignment assign(m);
  const AmbientModel& amb = *m;
  long candidates = 0;
  std::vector<int> rowsel;
  std::vector<std::vector<std::string>> vers;
  std::function<void(int)> rec = [&](int depth) {
    if (depth == rows + 1) {
      if (++candidates > b.max_search)
        throw BudgetExceeded("rectangle candidate scan exceeded the search budget");
      GridData gd;
      gd.n = rows;
      gd.m = cols;
      for (int t : rowsel) {
        gd.ent.push_back(pool.ent[t]);
        gd.hor.push_back(pool.hor[t]);
      }
      gd.ver = vers;
      Diagram g = diagram_of(m, gd);
      if (classify(rs, marked, assign, map_from_initial(g), Side::Left, b).classes.cof)
        insert_entry(lv, grid_encode(g), gd, b);
      return;
    }
    for (int t = 0; t < (int)pool.diagrams.size(); ++t) {
      if (depth == 0) {
        // Necessary for membership: the marked first row is a chain of
        // cofibrations on a cofibrant start.
        if (!amb.is_cof(amb.from_initial(pool.ent[t][0]))) continue;
        bool ok = true;
        for (const auto& h : pool.hor[t])
          if (!amb.is_cof(h)) {
            ok = false;
            break;
          }
        if (!ok) continue;
        rowsel.push_back(t);
        rec(1);
        rowsel.pop_back();
      } else {
        const Diagram& prev = pool.diagrams[rowsel.back()];
        EnumStats st;
        for_each_map(
            prev, pool.diagrams[t], b,
            [&](const std::map<std::string, std::string>& comps) {
              // Necessary: the marked first-column step is a cofibration.
              if (!amb.is_cof(comps.at("0"))) return true;
              std::vector<std::string> v(cols + 1);
              for (int j = 0; j <= cols; ++j) v[j] = comps.at(cobj(j));
              rowsel.push_back(t);
              vers.push_back(std::move(v));
              rec(depth + 1);
              vers.pop_back();
              rowsel.pop_back();
              return true;
            },
            st);
        if (st.capped) throw BudgetExceeded("vertical map enumeration was cut short");
      }
    }
  };
  rec(0);
  finish_level(lv);
  return lv;
}

struct StepTo {
  int to = 0;
  std::vector<std::string> comp;
};

// Route two: stack cofibration chains along maps of the narrow class.
BuiltLevel nerve_level_build(const AmbientPtr& m, const WaldhausenSubcat& u, int rows, int cols,
                             const Budget& b, const TLevel& t,
                             const std::vector<std::vector<StepTo>>& steps) {
  BuiltLevel lv;
  lv.n = rows;
  lv.m = cols;
  ReedyStructure rs = grid_structure(rows, cols);
  std::vector<std::string> marked = grid_marked(rows, cols);
  ModelAssignment assign(m);
  (void)u;
  std::vector<int> chain;
  std::vector<const std::vector<std::string>*> vers;
  std::function<void(int)> rec = [&](int depth) {
    if (depth == rows) {
      GridData gd;
      gd.n = rows;
      gd.m = cols;
      for (int x : chain) {
        std::vector<std::string> ent(cols + 1), hor(cols);
        const Diagram& d = t.objects[x];
        for (int j = 0; j <= cols; ++j) ent[j] = d.at(cobj(j));
        for (int j = 0; j < cols; ++j) hor[j] = d.edge("g_" + cobj(j) + "_" + cobj(j + 1));
        gd.ent.push_back(std::move(ent));
        gd.hor.push_back(std::move(hor));
      }
      for (const auto* v : vers) gd.ver.push_back(*v);
      Diagram g = diagram_of(m, gd);
      // Stacked chains are always members of the rectangle structure's
      // cofibrant class; a failure falsifies the level agreement at its
      // easy inclusion, so it is an internal error.
      if (!classify(rs, marked, assign, map_from_initial(g), Side::Left, b).classes.cof)
        throw HardError("stacked cofibration chains fail rectangle cofibrancy: " +
                        grid_encode(g));
      insert_entry(lv, grid_encode(g), gd, b);
      return;
    }
    int cur = chain.back();
    for (const auto& s : steps[cur]) {
      chain.push_back(s.to);
      vers.push_back(&s.comp);
      rec(depth + 1);
      vers.pop_back();
      chain.pop_back();
    }
  };
  for (int x0 = 0; x0 < (int)t.objects.size(); ++x0) {
    chain.assign(1, x0);
    vers.clear();
    rec(0);
  }
  finish_level(lv);
  return lv;
}

std::vector<std::vector<StepTo>> wbar_steps(const TLevel& t, const Budget& b) {
  std::vector<std::vector<StepTo>> steps(t.objects.size());
  int cols = t.n;
  for (int x = 0; x < (int)t.objects.size(); ++x) {
    for (int y = 0; y < (int)t.objects.size(); ++y) {
      EnumStats st;
      for_each_map(
          t.objects[x], t.objects[y], b,
          [&](const std::map<std::string, std::string>& comps) {
            DiagramMap f{t.objects[x], t.objects[y], comps};
            if (thomason_wbar(f, b)) {
              StepTo s;
              s.to = y;
              s.comp.resize(cols + 1);
              for (int j = 0; j <= cols; ++j) s.comp[j] = comps.at(cobj(j));
              steps[x].push_back(std::move(s));
            }
            return true;
          },
          st);
      if (st.capped) throw BudgetExceeded("narrow-class step enumeration was cut short");
    }
  }
  return steps;
}

void verify_entries(const AmbientPtr& m, const WaldhausenSubcat& u, const BuiltLevel& lv) {
  for (int k = 0; k < (int)lv.ids.size(); ++k) {
    for (const auto& row : lv.gds[k].ent)
      for (const auto& x : row)
        if (!u.member(x))
          throw HardError("entry of level (" + level_key(lv.n, lv.m) +
                          ") contains a non-member: " + x);
    Diagram g = grid_decode(m, lv.ids[k]);
    if (grid_encode(g) != lv.ids[k])
      throw HardError("rectangle encoding does not round-trip: " + lv.ids[k]);
  }
}

}  // namespace

BiPipeline pipeline_from_string(const std::string& s) {
  if (s == "evcof") return BiPipeline::EvCof;
  if (s == "nerve_wbar_t") return BiPipeline::NerveWbarT;
  throw ValidationError("unknown pipeline '" + s + "' (want evcof | nerve_wbar_t)");
}

std::string pipeline_to_string(BiPipeline p) {
  return p == BiPipeline::EvCof ? "evcof" : "nerve_wbar_t";
}

BisimplicialSet build_bisimplicial(const AmbientPtr& m, const WaldhausenSubcat& u,
                                   int truncation, BiPipeline pipeline, const Budget& b) {
  if (truncation < 0) throw ValidationError("truncation must be nonnegative");
  BisimplicialSet out;
  out.truncation = truncation;
  for (int n = 0; n <= truncation; ++n)
    for (int cols = 0; n + cols <= truncation; ++cols) {
      AcceptabilityReport ar =
          check_acceptable(grid_structure(n, cols), grid_marked(n, cols), m, b);
      if (!ar.left)
        throw ValidationError(
            "first row and column fail colimit-side acceptability at level (" +
            level_key(n, cols) + ")");
    }
  std::map<std::pair<int, int>, BuiltLevel> levels;
  if (pipeline == BiPipeline::EvCof) {
    for (int cols = 0; cols <= truncation; ++cols) {
      LadderPool pool = ladder_pool(m, u, cols, b);
      for (int n = 0; n + cols <= truncation; ++n)
        levels[{n, cols}] = evcof_level(m, u, n, cols, b, pool);
    }
  } else {
    for (int cols = 0; cols <= truncation; ++cols) {
      TLevel t = t_level(m, u, cols, b);
      std::vector<std::vector<StepTo>> steps;
      if (truncation - cols >= 1) steps = wbar_steps(t, b);
      for (int n = 0; n + cols <= truncation; ++n)
        levels[{n, cols}] = nerve_level_build(m, u, n, cols, b, t, steps);
    }
  }
  for (const auto& [key, lv] : levels) {
    verify_entries(m, u, lv);
    out.entries[level_key(key.first, key.second)] = lv.ids;
  }
  // Face and degeneracy index maps, shared by both routes.
  for (const auto& [key, lv] : levels) {
    int n = key.first, cols = key.second;
    auto image_index = [&](const GridData& gd, int tn, int tm) {
      Diagram g = diagram_of(m, gd);
      std::string id = grid_encode(g);
      const BuiltLevel& target = levels.at({tn, tm});
      auto it = target.index.find(id);
      if (it == target.index.end())
        throw HardError("structure map image is missing from level (" + level_key(tn, tm) +
                        "): " + id);
      return it->second;
    };
    const AmbientModel& amb = *m;
    if (cols >= 1)
      for (int i = 0; i <= cols; ++i) {
        std::vector<int> v;
        for (const auto& gd : lv.gds) v.push_back(image_index(col_face(amb, gd, i), n, cols - 1));
        out.h_faces[map_key(n, cols, i)] = std::move(v);
      }
    if (n >= 1)
      for (int i = 0; i <= n; ++i) {
        std::vector<int> v;
        for (const auto& gd : lv.gds)
          v.push_back(image_index(transpose(col_face(amb, transpose(gd), i)), n - 1, cols));
        out.v_faces[map_key(n, cols, i)] = std::move(v);
      }
    if (n + cols + 1 <= truncation) {
      for (int i = 0; i <= cols; ++i) {
        std::vector<int> v;
        for (const auto& gd : lv.gds)
          v.push_back(image_index(col_degen(amb, gd, i), n, cols + 1));
        out.h_degens[map_key(n, cols, i)] = std::move(v);
      }
      for (int i = 0; i <= n; ++i) {
        std::vector<int> v;
        for (const auto& gd : lv.gds)
          v.push_back(image_index(transpose(col_degen(amb, transpose(gd), i)), n + 1, cols));
        out.v_degens[map_key(n, cols, i)] = std::move(v);
      }
    }
  }
  return out;
}

BiCompare compare_bisimplicial(const BisimplicialSet& a, const BisimplicialSet& b) {
  if (a.truncation != b.truncation)
    throw ValidationError("mismatched truncations: " + std::to_string(a.truncation) + " vs " +
                          std::to_string(b.truncation));
  BiCompare r;
  auto keys_of = [](const auto& mp) {
    std::vector<std::string> ks;
    for (const auto& [k, v] : mp) ks.push_back(k);
    return ks;
  };
  if (keys_of(a.entries) != keys_of(b.entries)) {
    r.witness = "level sets differ";
    return r;
  }
  for (const auto& [k, av] : a.entries) {
    const auto& bv = b.entries.at(k);
    if (av.size() != bv.size()) {
      r.witness = "level (" + k + "): " + std::to_string(av.size()) + " vs " +
                  std::to_string(bv.size()) + " entries";
      return r;
    }
    for (int i = 0; i < (int)av.size(); ++i)
      if (av[i] != bv[i]) {
        r.witness = "level (" + k + ") entry " + std::to_string(i) + ": " + av[i] + " vs " + bv[i];
        return r;
      }
  }
  auto cmp_table = [&](const char* name, const std::map<std::string, std::vector<int>>& ta,
                       const std::map<std::string, std::vector<int>>& tb) {
    if (keys_of(ta) != keys_of(tb)) {
      r.witness = std::string(name) + ": key sets differ";
      return false;
    }
    for (const auto& [k, av] : ta) {
      const auto& bv = tb.at(k);
      if (av != bv) {
        std::string detail;
        for (int i = 0; i < (int)std::min(av.size(), bv.size()); ++i)
          if (av[i] != bv[i]) {
            detail = " index " + std::to_string(i) + ": " + std::to_string(av[i]) + " vs " +
                     std::to_string(bv[i]);
            break;
          }
        r.witness = std::string(name) + " (" + k + ")" + detail;
        return false;
      }
    }
    return true;
  };
  if (!cmp_table("h_faces", a.h_faces, b.h_faces)) return r;
  if (!cmp_table("v_faces", a.v_faces, b.v_faces)) return r;
  if (!cmp_table("h_degens", a.h_degens, b.h_degens)) return r;
  if (!cmp_table("v_degens", a.v_degens, b.v_degens)) return r;
  r.equal = true;
  return r;
}

namespace {

const std::vector<int>& tab(const std::map<std::string, std::vector<int>>& t,
                            const std::string& key) {
  auto it = t.find(key);
  if (it == t.end()) throw HardError("missing structure map table entry: " + key);
  return it->second;
}

}  // namespace

CheckReport check_bisimplicial_identities(const BisimplicialSet& s) {
  CheckReport rep{"face and degeneracy identities"};
  int N = s.truncation;
  std::vector<std::pair<int, int>> lvls;
  for (int n = 0; n <= N; ++n)
    for (int m = 0; n + m <= N; ++m) lvls.push_back({n, m});
  auto count_of = [&](int n, int m) {
    auto it = s.entries.find(level_key(n, m));
    if (it == s.entries.end()) throw HardError("missing level (" + level_key(n, m) + ")");
    return (int)it->second.size();
  };
  struct FamilyTally {
    long count = 0;
    std::string wit;
  };
  FamilyTally ff_h, ff_v, dd_h, dd_v, fd_h, fd_v, mixed;
  auto check = [](FamilyTally& fam, bool cond, const std::string& what) {
    ++fam.count;
    if (!cond && fam.wit.empty()) fam.wit = what;
  };
  for (auto [n, m] : lvls) {
    int L = count_of(n, m);
    // face-face, horizontal: d_i d_j = d_{j-1} d_i for i < j
    if (m >= 2)
      for (int j = 1; j <= m; ++j)
        for (int i = 0; i < j; ++i) {
          const auto& dj = tab(s.h_faces, map_key(n, m, j));
          const auto& di = tab(s.h_faces, map_key(n, m, i));
          const auto& di_lo = tab(s.h_faces, map_key(n, m - 1, i));
          const auto& djm_lo = tab(s.h_faces, map_key(n, m - 1, j - 1));
          for (int t = 0; t < L; ++t)
            check(ff_h, di_lo[dj[t]] == djm_lo[di[t]],
                  "horizontal face-face at (" + level_key(n, m) + ") i=" + std::to_string(i) +
                      " j=" + std::to_string(j) + " entry " + std::to_string(t));
        }
    if (n >= 2)
      for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i) {
          const auto& dj = tab(s.v_faces, map_key(n, m, j));
          const auto& di = tab(s.v_faces, map_key(n, m, i));
          const auto& di_lo = tab(s.v_faces, map_key(n - 1, m, i));
          const auto& djm_lo = tab(s.v_faces, map_key(n - 1, m, j - 1));
          for (int t = 0; t < L; ++t)
            check(ff_v, di_lo[dj[t]] == djm_lo[di[t]],
                  "vertical face-face at (" + level_key(n, m) + ") i=" + std::to_string(i) +
                      " j=" + std::to_string(j) + " entry " + std::to_string(t));
        }
    // degeneracy-degeneracy: s_i s_j = s_{j+1} s_i for i <= j
    if (n + m + 2 <= N)
      for (int j = 0; j <= m; ++j)
        for (int i = 0; i <= j; ++i) {
          const auto& sj = tab(s.h_degens, map_key(n, m, j));
          const auto& si = tab(s.h_degens, map_key(n, m, i));
          const auto& si_hi = tab(s.h_degens, map_key(n, m + 1, i));
          const auto& sjp_hi = tab(s.h_degens, map_key(n, m + 1, j + 1));
          for (int t = 0; t < L; ++t)
            check(dd_h, si_hi[sj[t]] == sjp_hi[si[t]],
                  "horizontal degeneracy-degeneracy at (" + level_key(n, m) + ") i=" +
                      std::to_string(i) + " j=" + std::to_string(j) + " entry " +
                      std::to_string(t));
        }
    if (n + m + 2 <= N)
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= j; ++i) {
          const auto& sj = tab(s.v_degens, map_key(n, m, j));
          const auto& si = tab(s.v_degens, map_key(n, m, i));
          const auto& si_hi = tab(s.v_degens, map_key(n + 1, m, i));
          const auto& sjp_hi = tab(s.v_degens, map_key(n + 1, m, j + 1));
          for (int t = 0; t < L; ++t)
            check(dd_v, si_hi[sj[t]] == sjp_hi[si[t]],
                  "vertical degeneracy-degeneracy at (" + level_key(n, m) + ") i=" +
                      std::to_string(i) + " j=" + std::to_string(j) + " entry " +
                      std::to_string(t));
        }
    // face-degeneracy: d_i s_j
    if (n + m + 1 <= N) {
      for (int j = 0; j <= m; ++j)
        for (int i = 0; i <= m + 1; ++i) {
          const auto& sj = tab(s.h_degens, map_key(n, m, j));
          const auto& di_hi = tab(s.h_faces, map_key(n, m + 1, i));
          for (int t = 0; t < L; ++t) {
            int lhs = di_hi[sj[t]];
            int rhs;
            if (i == j || i == j + 1)
              rhs = t;
            else if (i < j)
              rhs = tab(s.h_degens, map_key(n, m - 1, j - 1))[tab(s.h_faces, map_key(n, m, i))[t]];
            else
              rhs = tab(s.h_degens, map_key(n, m - 1, j))[tab(s.h_faces, map_key(n, m, i - 1))[t]];
            check(fd_h, lhs == rhs,
                  "horizontal face-degeneracy at (" + level_key(n, m) + ") i=" +
                      std::to_string(i) + " j=" + std::to_string(j) + " entry " +
                      std::to_string(t));
          }
        }
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n + 1; ++i) {
          const auto& sj = tab(s.v_degens, map_key(n, m, j));
          const auto& di_hi = tab(s.v_faces, map_key(n + 1, m, i));
          for (int t = 0; t < L; ++t) {
            int lhs = di_hi[sj[t]];
            int rhs;
            if (i == j || i == j + 1)
              rhs = t;
            else if (i < j)
              rhs = tab(s.v_degens, map_key(n - 1, m, j - 1))[tab(s.v_faces, map_key(n, m, i))[t]];
            else
              rhs = tab(s.v_degens, map_key(n - 1, m, j))[tab(s.v_faces, map_key(n, m, i - 1))[t]];
            check(fd_v, lhs == rhs,
                  "vertical face-degeneracy at (" + level_key(n, m) + ") i=" + std::to_string(i) +
                      " j=" + std::to_string(j) + " entry " + std::to_string(t));
          }
        }
    }
    // mixed-direction commutation
    if (n >= 1 && m >= 1)
      for (int i = 0; i <= m; ++i)
        for (int k = 0; k <= n; ++k) {
          const auto& hf = tab(s.h_faces, map_key(n, m, i));
          const auto& vf = tab(s.v_faces, map_key(n, m, k));
          const auto& vf_after = tab(s.v_faces, map_key(n, m - 1, k));
          const auto& hf_after = tab(s.h_faces, map_key(n - 1, m, i));
          for (int t = 0; t < L; ++t)
            check(mixed, vf_after[hf[t]] == hf_after[vf[t]],
                  "face-face commutation at (" + level_key(n, m) + ") h" + std::to_string(i) +
                      " v" + std::to_string(k) + " entry " + std::to_string(t));
        }
    if (m >= 1 && n + m + 1 <= N)
      for (int i = 0; i <= m; ++i)
        for (int k = 0; k <= n; ++k) {
          const auto& hf = tab(s.h_faces, map_key(n, m, i));
          const auto& vd = tab(s.v_degens, map_key(n, m, k));
          const auto& vd_after = tab(s.v_degens, map_key(n, m - 1, k));
          const auto& hf_after = tab(s.h_faces, map_key(n + 1, m, i));
          for (int t = 0; t < L; ++t)
            check(mixed, vd_after[hf[t]] == hf_after[vd[t]],
                  "degeneracy-face commutation at (" + level_key(n, m) + ") h" +
                      std::to_string(i) + " v" + std::to_string(k) + " entry " +
                      std::to_string(t));
        }
    if (n >= 1 && n + m + 1 <= N)
      for (int i = 0; i <= m; ++i)
        for (int k = 0; k <= n; ++k) {
          const auto& vf = tab(s.v_faces, map_key(n, m, k));
          const auto& hd = tab(s.h_degens, map_key(n, m, i));
          const auto& hd_after = tab(s.h_degens, map_key(n - 1, m, i));
          const auto& vf_after = tab(s.v_faces, map_key(n, m + 1, k));
          for (int t = 0; t < L; ++t)
            check(mixed, hd_after[vf[t]] == vf_after[hd[t]],
                  "face-degeneracy commutation at (" + level_key(n, m) + ") h" +
                      std::to_string(i) + " v" + std::to_string(k) + " entry " +
                      std::to_string(t));
        }
    if (n + m + 2 <= N)
      for (int i = 0; i <= m; ++i)
        for (int k = 0; k <= n; ++k) {
          const auto& hd = tab(s.h_degens, map_key(n, m, i));
          const auto& vd = tab(s.v_degens, map_key(n, m, k));
          const auto& vd_after = tab(s.v_degens, map_key(n, m + 1, k));
          const auto& hd_after = tab(s.h_degens, map_key(n + 1, m, i));
          for (int t = 0; t < L; ++t)
            check(mixed, vd_after[hd[t]] == hd_after[vd[t]],
                  "degeneracy-degeneracy commutation at (" + level_key(n, m) + ") h" +
                      std::to_string(i) + " v" + std::to_string(k) + " entry " +
                      std::to_string(t));
        }
  }
  auto emit = [&](const std::string& label, const FamilyTally& fam) {
    rep.add(label + " (" + std::to_string(fam.count) + " instances)", fam.wit.empty(), fam.wit);
  };
  emit("horizontal face-face identities", ff_h);
  emit("vertical face-face identities", ff_v);
  emit("horizontal degeneracy-degeneracy identities", dd_h);
  emit("vertical degeneracy-degeneracy identities", dd_v);
  emit("horizontal face-degeneracy identities", fd_h);
  emit("vertical face-degeneracy identities", fd_v);
  emit("horizontal and vertical operations commute", mixed);
  return rep;
}

CheckReport check_structure_maps_quillen(const AmbientPtr& m, const WaldhausenSubcat& u,
                                         int truncation, const Budget& b) {
  if (truncation < 0) throw ValidationError("truncation must be nonnegative");
  CheckReport rep{"structure map preservation"};
  // Image closure on the built family: the build itself verifies that every
  // face or degeneracy image of an entry is an entry of the target level.
  {
    BisimplicialSet bs = build_bisimplicial(m, u, truncation, BiPipeline::NerveWbarT, b);
    long faces = 0, degens = 0;
    for (const auto& [k, v] : bs.h_faces) faces += (long)v.size();
    for (const auto& [k, v] : bs.v_faces) faces += (long)v.size();
    for (const auto& [k, v] : bs.h_degens) degens += (long)v.size();
    for (const auto& [k, v] : bs.v_degens) degens += (long)v.size();
    rep.add("every face image of an entry is again an entry (" + std::to_string(faces) +
                " images)",
            true, "");
    rep.add("every degeneracy image of an entry is again an entry (" + std::to_string(degens) +
                " images)",
            true, "");
  }
  ModelAssignment assign(m);
  const AmbientModel& amb = *m;
  (void)amb;
  for (int n = 0; n <= truncation; ++n)
    for (int cols = 0; n + cols <= truncation; ++cols) {
      // Sample pool of member-entry rectangles at this level.
      FinCatPtr shape = grid_shape(n, cols);
      std::vector<Diagram> pool;
      EnumStats st;
      bool pool_capped = false;
      for_each_diagram(
          *m, shape, u.tuned(b),
          [&](const ShapeDiagramData& dd) {
            for (const auto& [o, x] : dd.entries)
              if (!u.member(x)) return true;
            pool.push_back(Diagram{shape, m, dd});
            return true;
          },
          st);
      pool_capped = st.capped;
      // Diagonal sweep over source/target pairs so small indices mix early.
      std::vector<DiagramMap> sample;
      bool maps_capped = false;
      int last = (int)pool.size() - 1;
      for (int sdiag = 0; sdiag <= 2 * last && !maps_capped; ++sdiag)
        for (int i = std::max(0, sdiag - last); i <= std::min(last, sdiag) && !maps_capped; ++i) {
          int j = sdiag - i;
          EnumStats st2;
          for_each_map(
              pool[i], pool[j], b,
              [&](const std::map<std::string, std::string>& comps) {
                if ((long)sample.size() >= b.max_maps) {
                  maps_capped = true;
                  return false;
                }
                sample.push_back(DiagramMap{pool[i], pool[j], comps});
                return true;
              },
              st2);
        }
      ReedyStructure rs_src = grid_structure(n, cols);
      std::vector<std::string> marked_src = grid_marked(n, cols);
      std::vector<ClassVector> src_cv;
      src_cv.reserve(sample.size());
      for (const auto& f : sample)
        src_cv.push_back(classify(rs_src, marked_src, assign, f, Side::Left, b).classes);
      struct Fam {
        std::string label;
        bool left = false, right = false;
        int tn = 0, tm = 0;
        std::function<DiagramMap(const DiagramMap&)> apply;
      };
      std::vector<Fam> fams;
      if (cols >= 1)
        for (int i = 0; i <= cols; ++i)
          fams.push_back({"horizontal face " + std::to_string(i), true, true, n, cols - 1,
                          [i](const DiagramMap& f) { return grid_map_h_face(f, i); }});
      if (n >= 1)
        for (int i = 0; i <= n; ++i)
          fams.push_back({"vertical face " + std::to_string(i), true, true, n - 1, cols,
                          [i](const DiagramMap& f) { return grid_map_v_face(f, i); }});
      if (n + cols + 1 <= truncation) {
        for (int i = 0; i <= cols; ++i)
          fams.push_back({"horizontal degeneracy " + std::to_string(i), true, true, n, cols + 1,
                          [i](const DiagramMap& f) { return grid_map_h_degen(f, i); }});
        for (int i = 0; i <= n; ++i)
          fams.push_back({"vertical degeneracy " + std::to_string(i), true, true, n + 1, cols,
                          [i](const DiagramMap& f) { return grid_map_v_degen(f, i); }});
        fams.push_back({"horizontal initial pad", true, false, n, cols + 1,
                        [](const DiagramMap& f) { return grid_map_h_pad_front(f); }});
        fams.push_back({"horizontal final pad", false, true, n, cols + 1,
                        [](const DiagramMap& f) { return grid_map_h_pad_back(f); }});
        fams.push_back({"vertical initial pad", true, false, n + 1, cols,
                        [](const DiagramMap& f) { return grid_map_v_pad_front(f); }});
        fams.push_back({"vertical final pad", false, true, n + 1, cols,
                        [](const DiagramMap& f) { return grid_map_v_pad_back(f); }});
      }
      std::string suffix = " of " + std::to_string(sample.size()) + " maps at (" +
                           level_key(n, cols) + ")" +
                           (pool_capped || maps_capped ? ", capped" : "") + ")";
      for (const auto& fam : fams) {
        ReedyStructure rs_t = grid_structure(fam.tn, fam.tm);
        std::vector<std::string> marked_t = grid_marked(fam.tn, fam.tm);
        long n_cof = 0, n_acof = 0, n_fib = 0, n_afib = 0;
        long bad_cof = 0, bad_acof = 0, bad_fib = 0, bad_afib = 0;
        std::string w_cof, w_acof, w_fib, w_afib;
        for (int k = 0; k < (int)sample.size(); ++k) {
          const ClassVector& sc = src_cv[k];
          bool need = (fam.left && (sc.cof || sc.acy_cof)) || (fam.right && (sc.fib || sc.acy_fib));
          if (!need) continue;
          DiagramMap g = fam.apply(sample[k]);
          ClassVector tc = classify(rs_t, marked_t, assign, g, Side::Left, b).classes;
          auto describe = [&]() {
            return grid_encode(sample[k].src) + " => " + grid_encode(sample[k].dst);
          };
          if (fam.left && sc.cof) {
            ++n_cof;
            if (!tc.cof && bad_cof++ == 0) w_cof = describe();
          }
          if (fam.left && sc.acy_cof) {
            ++n_acof;
            if (!tc.acy_cof && bad_acof++ == 0) w_acof = describe();
          }
          if (fam.right && sc.fib) {
            ++n_fib;
            if (!tc.fib && bad_fib++ == 0) w_fib = describe();
          }
          if (fam.right && sc.acy_fib) {
            ++n_afib;
            if (!tc.acy_fib && bad_afib++ == 0) w_afib = describe();
          }
        }
        if (fam.left) {
          rep.add(fam.label + " preserves cofibrations (" + std::to_string(n_cof) + suffix,
                  bad_cof == 0, w_cof);
          rep.add(fam.label + " preserves acyclic cofibrations (" + std::to_string(n_acof) +
                      suffix,
                  bad_acof == 0, w_acof);
        }
        if (fam.right) {
          rep.add(fam.label + " preserves fibrations (" + std::to_string(n_fib) + suffix,
                  bad_fib == 0, w_fib);
          rep.add(fam.label + " preserves acyclic fibrations (" + std::to_string(n_afib) +
                      suffix,
                  bad_afib == 0, w_afib);
        }
      }
    }
  return rep;
}

}  // namespace modred
