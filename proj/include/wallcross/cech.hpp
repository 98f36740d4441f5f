#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wallcross/scattering.hpp"

namespace wallcross {

/// Nerve of a chart cover: vertices (charts), directed edges (walls), and
/// quadrilateral 2-cells. A face records its two corner paths; the oriented
/// boundary is +bottom +right -top -left, where (bottom, right) is the
/// first path of the underlying cell and (left, top) the second. Both
/// shipped examples have exactly one face.
class Nerve {
 public:
  struct Edge {
    std::string id, src, dst;
  };
  struct Face {
    std::string id;
    std::string bottom, right;  // first path: base -> mid1 -> top
    std::string left, top;      // second path: base -> mid2 -> top
    std::string base, apex;
  };

  void add_vertex(std::string v) { vertices_.push_back(std::move(v)); }

  void add_edge(Edge e) {
    edge_order_.push_back(e.id);
    edges_.emplace(e.id, std::move(e));
  }

  void add_face(Face f) {
    const Edge& b = edge(f.bottom);
    const Edge& r = edge(f.right);
    const Edge& l = edge(f.left);
    const Edge& t = edge(f.top);
    if (b.src != l.src || b.dst != r.src || l.dst != t.src || r.dst != t.dst)
      throw std::invalid_argument("nerve face " + f.id + ": boundary is not a closed quad");
    f.base = b.src;
    f.apex = r.dst;
    faces_.push_back(std::move(f));
  }

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<std::string>& edge_order() const { return edge_order_; }
  const std::vector<Face>& faces() const { return faces_; }

  const Edge& edge(const std::string& id) const {
    auto it = edges_.find(id);
    if (it == edges_.end()) throw std::invalid_argument("unknown nerve edge " + id);
    return it->second;
  }

  const Face& face(const std::string& id) const {
    for (const auto& f : faces_)
      if (f.id == id) return f;
    throw std::invalid_argument("unknown nerve face " + id);
  }

  /// Builds the nerve of a scattering diagram. Cells must be bounded by two
  /// length-2 paths (the codimension-2 corner picture).
  static Nerve of_diagram(const ScatteringDiagram& d) {
    Nerve n;
    for (const auto& c : d.chart_order()) n.add_vertex(c);
    for (const auto& id : d.wall_order()) {
      const Wall& w = d.wall(id);
      n.add_edge({w.id, w.src, w.dst});
    }
    for (const auto& cell : d.cells()) {
      if (cell.path1.size() != 2 || cell.path2.size() != 2)
        throw std::invalid_argument("nerve: cell " + cell.id + " is not a quad corner cell");
      n.add_face({cell.id, cell.path1[0], cell.path1[1], cell.path2[0], cell.path2[1], "", ""});
    }
    return n;
  }

 private:
  std::vector<std::string> vertices_;
  std::map<std::string, Edge> edges_;
  std::vector<std::string> edge_order_;
  std::vector<Face> faces_;
};

using NervePtr = std::shared_ptr<const Nerve>;

/// Cech cochain on a nerve with polyvector-field values in shared global
/// coordinates. Values default to zero; mixed exterior degrees are allowed,
/// the bigrading (Cech degree, exterior degree) is read off per component.
class CechCochain {
 public:
  CechCochain(NervePtr nerve, std::size_t n, ParameterTablePtr table)
      : nerve_(std::move(nerve)), n_(n), table_(std::move(table)) {
    if (!nerve_) throw std::invalid_argument("cech cochain: null nerve");
  }

  const NervePtr& nerve() const { return nerve_; }
  std::size_t coords() const { return n_; }
  const ParameterTablePtr& table() const { return table_; }

  void set_vertex(const std::string& v, PolyVectorField value) {
    set(vertex_, v, std::move(value));
  }
  void set_edge(const std::string& e, PolyVectorField value) { set(edge_, e, std::move(value)); }
  void set_face(const std::string& f, PolyVectorField value) { set(face_, f, std::move(value)); }

  PolyVectorField vertex(const std::string& v) const { return get(vertex_, v); }
  PolyVectorField edge(const std::string& e) const { return get(edge_, e); }
  PolyVectorField face(const std::string& f) const { return get(face_, f); }

  const std::map<std::string, PolyVectorField>& vertex_values() const { return vertex_; }
  const std::map<std::string, PolyVectorField>& edge_values() const { return edge_; }
  const std::map<std::string, PolyVectorField>& face_values() const { return face_; }

  bool is_zero() const {
    for (const auto& [k, v] : vertex_)
      if (!v.is_zero()) return false;
    for (const auto& [k, v] : edge_)
      if (!v.is_zero()) return false;
    for (const auto& [k, v] : face_)
      if (!v.is_zero()) return false;
    return true;
  }

  CechCochain operator-() const { return scaled(Rational(-1)); }

  CechCochain scaled(const Rational& c) const {
    CechCochain r(nerve_, n_, table_);
    for (const auto& [k, v] : vertex_) r.set_vertex(k, v * c);
    for (const auto& [k, v] : edge_) r.set_edge(k, v * c);
    for (const auto& [k, v] : face_) r.set_face(k, v * c);
    return r;
  }

  CechCochain& operator+=(const CechCochain& o) {
    for (const auto& [k, v] : o.vertex_) add(vertex_, k, v);
    for (const auto& [k, v] : o.edge_) add(edge_, k, v);
    for (const auto& [k, v] : o.face_) add(face_, k, v);
    return *this;
  }

  CechCochain& operator-=(const CechCochain& o) { return *this += o.scaled(Rational(-1)); }

  friend CechCochain operator+(CechCochain a, const CechCochain& b) { return a += b; }
  friend CechCochain operator-(CechCochain a, const CechCochain& b) { return a -= b; }

  CechCochain truncate(const Cutoff& cutoff) const {
    CechCochain r(nerve_, n_, table_);
    for (const auto& [k, v] : vertex_) r.set_vertex(k, v.truncate(cutoff));
    for (const auto& [k, v] : edge_) r.set_edge(k, v.truncate(cutoff));
    for (const auto& [k, v] : face_) r.set_face(k, v.truncate(cutoff));
    return r;
  }

  CechCochain kill_divisible(const ParamExponents& monomial) const {
    CechCochain r(nerve_, n_, table_);
    for (const auto& [k, v] : vertex_) r.set_vertex(k, v.kill_divisible(monomial));
    for (const auto& [k, v] : edge_) r.set_edge(k, v.kill_divisible(monomial));
    for (const auto& [k, v] : face_) r.set_face(k, v.kill_divisible(monomial));
    return r;
  }

  PolyVectorField zero_value() const { return PolyVectorField::zero(n_, table_); }

 private:
  static void set(std::map<std::string, PolyVectorField>& m, const std::string& key,
                  PolyVectorField value) {
    if (value.is_zero())
      m.erase(key);
    else
      m.insert_or_assign(key, std::move(value));
  }

  static void add(std::map<std::string, PolyVectorField>& m, const std::string& key,
                  const PolyVectorField& value) {
    auto it = m.find(key);
    if (it == m.end()) {
      if (!value.is_zero()) m.emplace(key, value);
      return;
    }
    it->second += value;
    if (it->second.is_zero()) m.erase(it);
  }

  PolyVectorField get(const std::map<std::string, PolyVectorField>& m,
                      const std::string& key) const {
    auto it = m.find(key);
    return it == m.end() ? zero_value() : it->second;
  }

  NervePtr nerve_;
  std::size_t n_;
  ParameterTablePtr table_;
  std::map<std::string, PolyVectorField> vertex_;
  std::map<std::string, PolyVectorField> edge_;
  std::map<std::string, PolyVectorField> face_;
};

/// Cech differential: (dc)_{A->B} = c_B - c_A on edges, signed boundary sum
/// +bottom +right -top -left on faces. d o d = 0 because each face boundary
/// is a closed loop.
inline CechCochain cech_delta(const CechCochain& c) {
  const Nerve& nv = *c.nerve();
  CechCochain r(c.nerve(), c.coords(), c.table());
  for (const auto& id : nv.edge_order()) {
    const auto& e = nv.edge(id);
    r.set_edge(id, c.vertex(e.dst) - c.vertex(e.src));
  }
  for (const auto& f : nv.faces())
    r.set_face(f.id, c.edge(f.bottom) + c.edge(f.right) - c.edge(f.top) - c.edge(f.left));
  return r;
}

namespace detail {

/// Koszul sign for combining the cup product with the coefficient-level
/// Schouten bracket: the Cech degree q of the second factor crosses the
/// shifted exterior degree (s-1) of the first, with a global flip that makes
/// the degree-(1,0) master component reproduce the gluing identities.
inline Rational cup_sign(std::size_t q, std::size_t s) {
  return ((q * (s + 1) + 1) % 2 == 0) ? 1 : -1;  // (-1)^{q(s-1)+1}
}

/// One front/back pairing with per-exterior-degree Koszul signs.
inline PolyVectorField bracket_pair(const PolyVectorField& x, std::size_t q,
                                    const PolyVectorField& y) {
  PolyVectorField out = PolyVectorField::zero(x.coords(), x.table());
  for (std::size_t s = 0; s <= x.max_degree(); ++s) {
    PolyVectorField xs = x.component(s);
    if (xs.is_zero()) continue;
    out += schouten(xs, y) * cup_sign(q, s);
  }
  return out;
}

}  // namespace detail

/// Bracket on cochains induced by the cup product (front face / back face on
/// the quad cells) and the Schouten bracket on coefficients. Output in Cech
/// degrees 0..2; components that would land beyond the nerve dimension are
/// dropped (reported through `dropped` when non-null).
inline CechCochain cup_bracket(const CechCochain& x, const CechCochain& y,
                               bool* dropped = nullptr) {
  const Nerve& nv = *x.nerve();
  CechCochain r(x.nerve(), x.coords(), x.table());
  // 0-cochain factors pair at the front vertex when first, at the back
  // vertex when second; (1,1) pairings use the two corner paths of a face.
  for (const auto& v : nv.vertices())
    r.set_vertex(v, detail::bracket_pair(x.vertex(v), 0, y.vertex(v)));
  for (const auto& id : nv.edge_order()) {
    const auto& e = nv.edge(id);
    r.set_edge(id, detail::bracket_pair(x.vertex(e.src), 1, y.edge(id)) +
                       detail::bracket_pair(x.edge(id), 0, y.vertex(e.dst)));
  }
  for (const auto& f : nv.faces()) {
    PolyVectorField val = detail::bracket_pair(x.vertex(f.base), 2, y.face(f.id));
    val += detail::bracket_pair(x.face(f.id), 0, y.vertex(f.apex));
    val += detail::bracket_pair(x.edge(f.bottom), 1, y.edge(f.right));
    val -= detail::bracket_pair(x.edge(f.left), 1, y.edge(f.top));
    r.set_face(f.id, val);
  }
  if (dropped) {
    auto nonzero = [](const std::map<std::string, PolyVectorField>& m) {
      for (const auto& [k, v] : m)
        if (!v.is_zero()) return true;
      return false;
    };
    bool xe = nonzero(x.edge_values()), xf = nonzero(x.face_values());
    bool ye = nonzero(y.edge_values()), yf = nonzero(y.face_values());
    *dropped = (xf && (ye || yf)) || (xe && yf);
  }
  return r;
}

/// One residual line of a ledger or master check.
struct ResidualEntry {
  std::string id;        // deterministic check identifier
  std::string location;  // edge/face/wall label
  PolyVectorField residual;
  Valuation leading_valuation;
  bool zero() const { return residual.is_zero(); }
};

inline ResidualEntry make_entry(std::string id, std::string location, PolyVectorField residual) {
  Valuation v = residual.valuation();
  return ResidualEntry{std::move(id), std::move(location), std::move(residual), v};
}

/// The deformation ledger (w0, w1, w2) attached to a scattering diagram:
/// scalars on charts, vector fields on walls, a bivector on the corner cell.
struct Ledger {
  CechCochain w0;
  CechCochain w1;
  CechCochain w2;
};

/// Hochschild-cocycle checks for a ledger, all with the source-chart
/// superpotential in the contraction:
///   per edge A->B:  d w0 - i_{dW_A}(w1)
///   per face:       d w1 + i_{dW_base}(w2)
/// (sign on the face fixed by the +bottom+right-top-left orientation).
inline std::vector<ResidualEntry> check_hochschild_ledger(const ScatteringDiagram& d,
                                                          const Ledger& ledger) {
  const Nerve& nv = *ledger.w0.nerve();
  std::vector<ResidualEntry> out;
  CechCochain dw0 = cech_delta(ledger.w0);
  CechCochain dw1 = cech_delta(ledger.w1);
  for (const auto& id : nv.edge_order()) {
    const auto& e = nv.edge(id);
    const auto& wsrc = d.chart(e.src).superpotential;
    if (!wsrc) throw std::invalid_argument("ledger check: chart " + e.src + " has no superpotential");
    PolyVectorField res = dw0.edge(id) - interior_dW(*wsrc, ledger.w1.edge(id));
    out.push_back(make_entry("ledger.edge." + id, id, std::move(res)));
  }
  for (const auto& f : nv.faces()) {
    const auto& wbase = d.chart(f.base).superpotential;
    if (!wbase) throw std::invalid_argument("ledger check: chart " + f.base + " has no superpotential");
    PolyVectorField res = dw1.face(f.id) + interior_dW(*wbase, ledger.w2.face(f.id));
    out.push_back(make_entry("ledger.face." + f.id, f.id, std::move(res)));
  }
  return out;
}

/// Master-equation residual report for a cochain W = W0 + W1 + W2.
struct MasterReport {
  /// Full residual of dW + 1/2 [W, W] (symmetrized cup bracket), per cell.
  std::vector<ResidualEntry> full;
  /// Component equations with the source-chart convention:
  /// edges: dW0 + [W0_src, W1_e]; faces: dW1 + i_{dW0_base}(W2) without and
  /// with the quadratic wall-field term.
  std::vector<ResidualEntry> components;
  bool dropped_higher_degree = false;

  bool components_zero() const {
    for (const auto& e : components)
      if (!e.zero()) return false;
    return true;
  }
  bool full_zero() const {
    for (const auto& e : full)
      if (!e.zero()) return false;
    return true;
  }
};

inline MasterReport check_master(const CechCochain& w, const Cutoff& cutoff = no_cutoff) {
  const Nerve& nv = *w.nerve();
  MasterReport report;
  CechCochain dw = cech_delta(w);
  CechCochain quad = cup_bracket(w, w, &report.dropped_higher_degree).scaled(Rational(1, 2));
  CechCochain full = (dw + quad).truncate(cutoff);
  for (const auto& id : nv.edge_order())
    report.full.push_back(make_entry("master.full.edge." + id, id, full.edge(id)));
  for (const auto& f : nv.faces())
    report.full.push_back(make_entry("master.full.face." + f.id, f.id, full.face(f.id)));

  for (const auto& id : nv.edge_order()) {
    const auto& e = nv.edge(id);
    PolyVectorField w0a = w.vertex(e.src).component(0);
    PolyVectorField w1e = w.edge(id).component(1);
    PolyVectorField res = dw.edge(id).component(0) + schouten(w0a, w1e);
    report.components.push_back(
        make_entry("master.edge." + id, id, res.truncate(cutoff)));
  }
  for (const auto& f : nv.faces()) {
    LaurentPoly w0base(w.coords(), w.table());
    PolyVectorField base_pvf = w.vertex(f.base).component(0);
    for (const auto& [idx, c] : base_pvf.terms()) w0base += c;
    PolyVectorField linear =
        dw.face(f.id).component(1) + interior_dW(w0base, w.face(f.id).component(2));
    PolyVectorField vv = schouten(w.edge(f.bottom).component(1), w.edge(f.right).component(1)) -
                         schouten(w.edge(f.left).component(1), w.edge(f.top).component(1));
    PolyVectorField quad_term = vv * detail::cup_sign(1, 1) * Rational(1, 2);
    report.components.push_back(
        make_entry("master.face." + f.id + ".linear", f.id, linear.truncate(cutoff)));
    report.components.push_back(make_entry("master.face." + f.id + ".quad", f.id,
                                           (linear + quad_term).truncate(cutoff)));
  }
  return report;
}

/// Weak family unobstructedness: every stored component must sit on the
/// bidegree diagonal (Cech degree i, exterior degree i).
struct UnobstructednessReport {
  bool diagonal = true;
  std::vector<std::string> violations;
};

inline UnobstructednessReport check_weak_unobstructed(const CechCochain& c) {
  UnobstructednessReport report;
  auto scan = [&](const std::map<std::string, PolyVectorField>& values, std::size_t degree,
                  const char* kind) {
    for (const auto& [key, value] : values)
      for (const auto& [idx, coeff] : value.terms())
        if (!coeff.is_zero() && idx.size() != degree) {
          report.diagonal = false;
          report.violations.push_back(std::string(kind) + " " + key + ": exterior degree " +
                                      std::to_string(idx.size()) + " != " +
                                      std::to_string(degree));
        }
  };
  scan(c.vertex_values(), 0, "vertex");
  scan(c.edge_values(), 1, "edge");
  scan(c.face_values(), 2, "face");
  return report;
}

/// The wall-deformation vector field of a wall substitution z_i -> z_i u_i:
/// sum_i (u_i - 1) d_{log z_i}. Defined for walls with identity monomial part
/// and trivial scalar coefficients.
inline PolyVectorField wall_deformation_field(const Substitution& s) {
  std::size_t n = s.coords();
  PolyVectorField v(n, s.table());
  for (std::size_t i = 1; i <= n; ++i) {
    if (!s.coeff(i).is_one())
      throw std::invalid_argument("wall field: nontrivial coefficient part");
    for (std::size_t j = 0; j < n; ++j)
      if (s.matrix()[i - 1][j] != (j == i - 1 ? 1 : 0))
        throw std::invalid_argument("wall field: nontrivial monomial part");
    LaurentPoly u = s.unit(i) - LaurentPoly::one(n, s.table());
    if (!u.is_zero()) v.add_term({i}, u);
  }
  return v;
}

/// Assembles the master cochain of a diagram-with-ledger: chart
/// superpotentials in degree 0, wall deformation fields in degree 1, the
/// ledger bivector in degree 2.
inline CechCochain assemble_master_cochain(const ScatteringDiagram& d, const NervePtr& nerve,
                                           const CechCochain* w2 = nullptr) {
  CechCochain w(nerve, d.coords(), d.table());
  for (const auto& label : d.chart_order()) {
    const auto& sp = d.chart(label).superpotential;
    if (sp) w.set_vertex(label, PolyVectorField::from_function(*sp));
  }
  for (const auto& id : d.wall_order())
    w.set_edge(id, wall_deformation_field(d.wall(id).subst));
  if (w2)
    for (const auto& [key, value] : w2->face_values()) w.set_face(key, value);
  return w;
}

}  // namespace wallcross
