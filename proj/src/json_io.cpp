#include "json_io.hpp"

#include <cmath>
#include <cstdio>

#include "ttolab/errors.hpp"

namespace ttolab::io {

void require_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ValidationError(where + ": unknown key '" + it.key() + "'");
  }
}

namespace {

double num(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ValidationError(where + ": missing '" + key + "'");
  if (!j.at(key).is_number()) throw ValidationError(where + ": '" + key + "' must be a number");
  return j.at(key).get<double>();
}

int integer(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ValidationError(where + ": missing '" + key + "'");
  if (!j.at(key).is_number_integer()) throw ValidationError(where + ": '" + key + "' must be an integer");
  return j.at(key).get<int>();
}

}  // namespace

InnerFunction parse_inner(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw ValidationError("inner: expected an object with a string 'type'");
  const std::string t = j.at("type").get<std::string>();
  if (t == "monomial") {
    require_keys(j, {"type", "degree"}, "inner monomial");
    return InnerFunction::monomial(integer(j, "degree", "inner monomial"));
  }
  if (t == "blaschke") {
    require_keys(j, {"type", "zeros"}, "inner blaschke");
    if (!j.contains("zeros") || !j.at("zeros").is_array()) throw ValidationError("inner blaschke: 'zeros' must be an array");
    std::vector<BlaschkeZero> zs;
    for (auto& z : j.at("zeros")) {
      require_keys(z, {"re", "im", "angle", "deficit", "mult"}, "blaschke zero");
      BlaschkeZero b;
      if (z.contains("deficit")) {
        if (z.contains("re") || z.contains("im")) throw ValidationError("blaschke zero: give re/im or angle/deficit");
        b.a = DiskPoint{z.value("angle", 0.0), num(z, "deficit", "blaschke zero")};
        if (!(b.a.deficit > 0 && b.a.deficit <= 1)) throw ValidationError("Blaschke zeros must lie in the open disk");
      } else {
        const cd a(num(z, "re", "blaschke zero"), z.contains("im") ? num(z, "im", "blaschke zero") : 0.0);
        if (!(std::abs(a) < 1.0)) throw ValidationError("Blaschke zeros must lie in the open disk");
        b.a = DiskPoint::from_complex(a);
      }
      b.mult = z.contains("mult") ? integer(z, "mult", "blaschke zero") : 1;
      zs.push_back(b);
    }
    return InnerFunction::blaschke(std::move(zs));
  }
  if (t == "singular") {
    require_keys(j, {"type", "atoms"}, "inner singular");
    if (!j.contains("atoms") || !j.at("atoms").is_array()) throw ValidationError("inner singular: 'atoms' must be an array");
    std::vector<Atom> as;
    for (auto& a : j.at("atoms")) {
      require_keys(a, {"angle", "mass"}, "singular atom");
      as.push_back({num(a, "angle", "singular atom"), num(a, "mass", "singular atom")});
    }
    return InnerFunction::singular(std::move(as));
  }
  if (t == "product") {
    require_keys(j, {"type", "factors"}, "inner product");
    if (!j.contains("factors") || !j.at("factors").is_array()) throw ValidationError("inner product: 'factors' must be an array");
    std::vector<InnerFunction> fs;
    for (auto& f : j.at("factors")) fs.push_back(parse_inner(f));
    return InnerFunction::product(std::move(fs));
  }
  if (t == "power") {
    require_keys(j, {"type", "base", "s"}, "inner power");
    if (!j.contains("base")) throw ValidationError("inner power: missing 'base'");
    return power(parse_inner(j.at("base")), num(j, "s", "inner power"));
  }
  if (t == "family") {
    require_keys(j, {"type", "name", "K"}, "inner family");
    const std::string n = j.value("name", "");
    const int K = integer(j, "K", "inner family");
    if (K < 1 || K > 1000) throw ValidationError("inner family: K must lie in [1, 1000]");
    if (n == "blaschke") return truncate(TangentialBlaschkeFamily(), K);
    if (n == "singular") return truncate(TangentialAtomFamily(), K);
    if (n == "radial") return truncate(RadialBlaschkeFamily(), K);
    throw ValidationError("inner family: name must be blaschke, singular or radial");
  }
  throw ValidationError("inner: unknown type '" + t + "'");
}

json inner_to_json(const InnerFunction& theta) {
  json j;
  j["monomial_degree"] = theta.monomial_degree();
  json zs = json::array();
  for (auto& z : theta.zeros()) zs.push_back({{"angle", z.a.angle}, {"deficit", z.a.deficit}, {"mult", z.mult}});
  j["zeros"] = zs;
  json as = json::array();
  for (auto& a : theta.atoms()) as.push_back({{"angle", a.angle}, {"mass", a.mass}});
  j["atoms"] = as;
  return j;
}

cd parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_object()) {
    require_keys(j, {"re", "im"}, "complex");
    return {j.value("re", 0.0), j.value("im", 0.0)};
  }
  throw ValidationError("complex: expected a number, [re, im] or {re, im}");
}

json complex_to_json(cd z) { return json::array({z.real(), z.imag()}); }

std::vector<cd> parse_complex_list(const json& j) {
  if (!j.is_array()) throw ValidationError("expected an array of complex numbers");
  std::vector<cd> out;
  for (auto& v : j) out.push_back(parse_complex(v));
  return out;
}

json complex_list_to_json(const Eigen::VectorXcd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_to_json(v(i)));
  return a;
}

Eigen::MatrixXcd parse_matrix(const json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("matrix: expected a nonempty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Eigen::MatrixXcd m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ValidationError("matrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = parse_complex(j[r][c]);
  }
  return m;
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    a.push_back(row);
  }
  return a;
}

FourierPolynomial parse_polynomial(const json& j) {
  FourierPolynomial p;
  if (j.is_array()) {
    for (auto& t : j) {
      require_keys(t, {"n", "re", "im"}, "polynomial term");
      if (!t.contains("n") || !t.at("n").is_number_integer()) throw ValidationError("polynomial term: integer 'n' required");
      p.set(t.at("n").get<int>(), {t.value("re", 0.0), t.value("im", 0.0)});
    }
  } else if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      std::size_t pos = 0;
      int k = 0;
      try {
        k = std::stoi(it.key(), &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != it.key().size() || pos == 0) throw ValidationError("polynomial: keys must be integers");
      p.set(k, parse_complex(it.value()));
    }
  } else {
    throw ValidationError("polynomial: expected an array of terms or an index map");
  }
  return p;
}

json polynomial_to_json(const FourierPolynomial& p) {
  json a = json::array();
  for (auto& [k, c] : p.coeffs()) a.push_back({{"n", k}, {"re", c.real()}, {"im", c.imag()}});
  return a;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const json& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(config.dump())));
  return buf;
}

}  // namespace ttolab::io
