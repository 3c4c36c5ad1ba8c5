#include "berkcrucial/io.hpp"

#include <json.hpp>

#include <cctype>
#include <sstream>

namespace berk {

using json = nlohmann::ordered_json;

namespace {

// --- tiny recursive-descent parser over the rational function field -------

struct RF {
  Poly num, den;  // over the context, den nonzero
};

struct Parser {
  std::string s;
  size_t i = 0;
  TowerContext ctx;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& m) {
    throw InputError("parse error at position " + std::to_string(i) + ": " + m +
                     " in \"" + s + "\"");
  }

  RF constant(const QQ& q) {
    return RF{Poly::from_rationals(ctx, {q}), Poly::from_rationals(ctx, {QQ(1)})};
  }

  RF add(const RF& a, const RF& b) {
    return RF{a.num * b.den + b.num * a.den, a.den * b.den};
  }
  RF mul(const RF& a, const RF& b) { return RF{a.num * b.num, a.den * b.den}; }
  RF div(const RF& a, const RF& b) {
    if (b.num.is_zero()) fail("division by zero");
    return RF{a.num * b.den, a.den * b.num};
  }
  RF neg(const RF& a) {
    return mul(constant(QQ(-1)), a);
  }

  RF parse_expr() {
    RF v = parse_term();
    while (true) {
      skip();
      if (eat('+'))
        v = add(v, parse_term());
      else if (eat('-'))
        v = add(v, neg(parse_term()));
      else
        break;
    }
    return v;
  }

  RF parse_term() {
    RF v = parse_unary();
    while (true) {
      skip();
      if (eat('*'))
        v = mul(v, parse_unary());
      else if (eat('/'))
        v = div(v, parse_unary());
      else
        break;
    }
    return v;
  }

  RF parse_unary() {
    skip();
    if (eat('-')) return neg(parse_unary());
    return parse_power();
  }

  RF parse_power() {
    RF base = parse_atom();
    skip();
    if (eat('^')) {
      skip();
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j == i) fail("exponent expected");
      long exp = std::stol(s.substr(i, j - i));
      i = j;
      RF v = constant(QQ(1));
      for (long k = 0; k < exp; ++k) v = mul(v, base);
      return v;
    }
    return base;
  }

  RF parse_atom() {
    skip();
    if (i >= s.size()) fail("unexpected end");
    char c = s[i];
    if (c == '(') {
      ++i;
      RF v = parse_expr();
      if (!eat(')')) fail("')' expected");
      return v;
    }
    if (c == 'z') {
      ++i;
      return RF{Poly::from_rationals(ctx, {QQ(0), QQ(1)}),
                Poly::from_rationals(ctx, {QQ(1)})};
    }
    if (c == 'p') {
      ++i;
      return constant(QQ(ctx.p));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      QQ q = parse_rational(s.substr(i, j - i));
      i = j;
      return constant(q);
    }
    fail("unexpected character");
  }
};

json elem_json(const TowerElem& x) {
  json j;
  j["p"] = x.context().p;
  j["e"] = x.context().e;
  json cs = json::array();
  for (const auto& c : x.coeffs()) cs.push_back(rational_str(c));
  j["coeffs"] = cs;
  return j;
}

json point_j(const BerkPoint& P) {
  json j;
  if (P.is_infinity()) {
    j["type"] = "I";
    j["center"] = "inf";
    return j;
  }
  BerkPoint n = P.normal_form();
  j["type"] = n.is_type1() ? "I" : "II";
  j["center"] = n.center().str();
  if (n.is_type2()) j["t"] = rational_str(n.t().value());
  j["elem"] = elem_json(n.center());
  return j;
}

json tree_j(const FiniteTree& T) {
  json j;
  j["schema"] = "tree-v1";
  json vs = json::array();
  for (const auto& v : T.vertices()) vs.push_back(point_j(v));
  j["vertices"] = vs;
  json es = json::array();
  for (const auto& e : T.edges()) {
    json je;
    je["u"] = e.u;
    je["v"] = e.v;
    je["len"] = e.len.str();
    es.push_back(je);
  }
  j["edges"] = es;
  return j;
}

}  // namespace

RationalMapRep parse_map(const std::string& expr, long p, int e) {
  if (p < 2) throw InputError("p must be a prime >= 2");
  // primality by trial division (desk-scale primes)
  for (long q = 2; q * q <= p; ++q)
    if (p % q == 0) throw InputError("p must be prime");
  Parser P;
  P.s = expr;
  P.ctx = TowerContext{p, e};
  RF v = P.parse_expr();
  P.skip();
  if (P.i != P.s.size()) P.fail("trailing input");
  if (v.num.is_zero()) throw InputError("map is identically zero");
  return RationalMapRep::from_polys(v.num, v.den);
}

BerkPoint parse_point(const std::string& s, const TowerContext& ctx) {
  size_t k = s.find(';');
  if (k == std::string::npos)
    throw InputError("point syntax is \"center;t\": " + s);
  Parser P;
  P.s = s.substr(0, k);
  P.ctx = ctx;
  RF v = P.parse_expr();
  P.skip();
  if (P.i != P.s.size()) P.fail("trailing input in center");
  if (v.num.deg() > 0 || v.den.deg() > 0)
    throw InputError("point center must be constant: " + s);
  TowerElem center = v.num.is_zero()
                         ? TowerElem::zero(ctx)
                         : v.num.coeff(0) / v.den.coeff(0);
  QQ t = parse_rational(s.substr(k + 1));
  return BerkPoint::type2(center, t);
}

std::string rational_json(const QQ& q) { return rational_str(q); }

std::string point_json(const BerkPoint& P) { return point_j(P).dump(); }

std::string map_json(const RationalMapRep& f) {
  json j;
  j["schema"] = "map-v1";
  j["p"] = f.context().p;
  j["e"] = f.context().e;
  j["degree"] = f.degree();
  json n = json::array(), d = json::array();
  for (const auto& c : f.lift().f1) n.push_back(c.str());
  for (const auto& c : f.lift().f0) d.push_back(c.str());
  j["num"] = n;
  j["den"] = d;
  auto coeff_lists = [](const std::vector<TowerElem>& cs) {
    json out = json::array();
    for (const auto& c : cs) {
      json row = json::array();
      for (const auto& q : c.coeffs()) row.push_back(rational_str(q));
      out.push_back(row);
    }
    return out;
  };
  j["num_coeffs"] = coeff_lists(f.lift().f1);
  j["den_coeffs"] = coeff_lists(f.lift().f0);
  j["vres"] = rational_str(f.vres_min());
  return j.dump();
}

RationalMapRep parse_map_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || j.value("schema", "") != "map-v1")
    throw InputError("parse_map_json: not a map-v1 document");
  TowerContext ctx{j.at("p").get<long>(), j.at("e").get<int>()};
  int d = j.at("degree").get<int>();
  auto read_form = [&](const json& rows) {
    std::vector<TowerElem> cs;
    for (const auto& row : rows) {
      std::vector<QQ> qs;
      for (const auto& s : row) qs.push_back(parse_rational(s.get<std::string>()));
      if (static_cast<int>(qs.size()) != ctx.e)
        throw InputError("parse_map_json: coefficient arity mismatch");
      cs.emplace_back(ctx, qs);
    }
    return cs;
  };
  BiForm F;
  F.d = d;
  F.ctx = ctx;
  F.f1 = read_form(j.at("num_coeffs"));
  F.f0 = read_form(j.at("den_coeffs"));
  if (static_cast<int>(F.f0.size()) != d + 1 ||
      static_cast<int>(F.f1.size()) != d + 1)
    throw InputError("parse_map_json: form length mismatch");
  return RationalMapRep(F);
}

std::string tree_json(const FiniteTree& T) { return tree_j(T).dump(); }

std::string tree_dot(const FiniteTree& T,
                     const std::vector<std::pair<BerkPoint, long>>* weights) {
  std::ostringstream os;
  os << "graph berk_tree {\n  node [shape=ellipse];\n";
  for (size_t i = 0; i < T.vertices().size(); ++i) {
    const BerkPoint& v = T.vertices()[i];
    std::string label = v.str();
    if (weights) {
      for (const auto& [pt, w] : *weights)
        if (pt == v) label += " | w=" + std::to_string(w);
    }
    os << "  v" << i << " [label=\"" << label << "\"];\n";
  }
  for (const auto& e : T.edges())
    os << "  v" << e.u << " -- v" << e.v << " [label=\"" << e.len.str()
       << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string crucial_report_json(const CrucialReport& r) {
  json j;
  j["schema"] = "crucial-v1";
  j["p"] = r.p;
  j["degree"] = r.degree;
  j["vres"] = rational_str(r.vres_min);
  json ws = json::array();
  for (const auto& [pt, w] : r.cm.weights) {
    json jw;
    jw["point"] = point_j(pt);
    jw["w"] = w;
    ws.push_back(jw);
  }
  j["weights"] = ws;
  json nu = json::array();
  for (const auto& [pt, m] : r.cm.nu.atoms()) {
    json ja;
    ja["point"] = point_j(pt);
    ja["mass"] = rational_str(m);
    nu.push_back(ja);
  }
  j["nu"] = nu;
  j["tree"] = tree_j(r.cm.tree);
  json mrl;
  json locus = json::array();
  for (const auto& pt : r.mrl.locus) locus.push_back(point_j(pt));
  mrl["locus"] = locus;
  mrl["min"] = rational_str(r.mrl.min_value);
  j["minresloc"] = mrl;
  j["potentially_good"] = r.potentially_good;
  json diam;
  json s1 = json::array(), s2 = json::array();
  for (const auto& q : r.diam.minresloc_slack) s1.push_back(rational_str(q));
  for (const auto& q : r.diam.crucialtree_slack) s2.push_back(rational_str(q));
  diam["minresloc_slack"] = s1;
  diam["crucialtree_slack"] = s2;
  diam["ok"] = r.diam.ok;
  j["diam"] = diam;
  return j.dump(2);
}

std::string degrees_json(const DegreeData& dd) {
  json j;
  j["schema"] = "degrees-v1";
  j["at"] = point_j(dd.at());
  j["image"] = point_j(dd.image());
  j["fixed"] = dd.fixed();
  j["local_degree"] = dd.local_degree();
  long p = dd.at().context().p;
  json dirs = json::array();
  for (long r = -1; r < p; ++r) {
    P1Fp v = r < 0 ? P1Fp::infinity() : P1Fp::finite(r, p);
    json jd;
    jd["class"] = v.str();
    jd["m"] = dd.directional_degree(v);
    jd["s"] = dd.surplus_degree(v);
    jd["image_class"] = dd.tangent_image(v).str();
    dirs.push_back(jd);
  }
  j["directions"] = dirs;
  return j.dump(2);
}

std::string equidist_json(const std::vector<EquidistRecord>& recs) {
  json j;
  j["schema"] = "equidist-v1";
  json rs = json::array();
  for (const auto& r : recs) {
    json jr;
    jr["n"] = r.n;
    jr["nu_integral"] = rational_str(r.nu_integral);
    jr["mu_value"] = rational_str(r.mu_value);
    jr["mu_err"] = rational_str(r.mu_err);
    jr["lhs_lo"] = rational_str(r.lhs_lo);
    jr["lhs_hi"] = rational_str(r.lhs_hi);
    jr["rhs"] = rational_str(r.rhs);
    jr["holds"] = r.holds;
    rs.push_back(jr);
  }
  j["records"] = rs;
  return j.dump(2);
}

std::string equidist_csv(const std::vector<EquidistRecord>& recs) {
  std::ostringstream os;
  os << "n,lhs,rhs,margin\n";
  for (const auto& r : recs)
    os << r.n << "," << rational_str(r.lhs_hi) << "," << rational_str(r.rhs)
       << "," << rational_str(QQ(r.rhs - r.lhs_hi)) << "\n";
  return os.str();
}

std::string profile_csv(const SegmentPLF& s) {
  std::ostringstream os;
  os << "piece,center,x,value\n";
  int idx = 0;
  for (const auto& p : s.pieces) {
    std::vector<QQ> xs;
    if (!p.lo_inf) xs.push_back(p.x_lo);
    for (const auto& b : p.f.breakpoints()) xs.push_back(b);
    if (!p.hi_inf) xs.push_back(p.x_hi);
    for (const auto& x : xs)
      os << idx << "," << p.center.str() << "," << rational_str(x) << ","
         << rational_str(p.f.evaluate(x)) << "\n";
    ++idx;
  }
  return os.str();
}

}  // namespace berk
