#include "ttolab/ttolab.h"

#include <cstdlib>
#include <cstring>
#include <json.hpp>
#include <string>

#include "commands.hpp"
#include "json_io.hpp"
#include "ttolab/errors.hpp"
#include "ttolab/tto.hpp"

using namespace ttolab;

struct ttl_inner {
  InnerFunction theta;
};
struct ttl_space {
  ModelSpace space;
};
struct ttl_operator {
  TTOperator op;
};

namespace {

thread_local std::string g_error;

template <class F>
int guarded(F&& f) {
  g_error.clear();
  try {
    f();
    return TTL_OK;
  } catch (const ValidationError& e) {
    g_error = e.what();
    return TTL_ERR_VALIDATION;
  } catch (const NoConvergence& e) {
    g_error = e.what();
    return TTL_ERR_NO_CONVERGENCE;
  } catch (const DomainError& e) {
    g_error = e.what();
    return TTL_ERR_DOMAIN;
  } catch (const nlohmann::json::exception& e) {
    g_error = std::string("json: ") + e.what();
    return TTL_ERR_VALIDATION;
  } catch (const std::exception& e) {
    g_error = e.what();
    return TTL_ERR_INTERNAL;
  } catch (...) {
    g_error = "unknown error";
    return TTL_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw ValidationError(std::string(what) + " is null");
}

}  // namespace

extern "C" {

const char* ttl_version(void) { return TTOLAB_VERSION; }
const char* ttl_last_error(void) { return g_error.c_str(); }

int ttl_inner_from_json(const char* json, ttl_inner** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new ttl_inner{io::parse_inner(nlohmann::json::parse(json))};
  });
}

void ttl_inner_free(ttl_inner* theta) { delete theta; }

int ttl_inner_eval(const ttl_inner* theta, double re, double im, double* out_re, double* out_im) {
  return guarded([&] {
    need(theta, "theta");
    need(out_re, "out_re");
    need(out_im, "out_im");
    const cd v = eval(theta->theta, cd(re, im));
    *out_re = v.real();
    *out_im = v.imag();
  });
}

int ttl_inner_zero_count(const ttl_inner* theta, int* out) {
  return guarded([&] {
    need(theta, "theta");
    need(out, "out");
    *out = theta->theta.zero_count();
  });
}

int ttl_space_create(const ttl_inner* theta, int grid, ttl_mode mode, ttl_space** out) {
  return guarded([&] {
    need(theta, "theta");
    need(out, "out");
    SpaceOptions o;
    o.grid = grid;
    if (mode == TTL_MODE_EXACT)
      o.mode = SpaceMode::Exact;
    else if (mode == TTL_MODE_TRUNCATED)
      o.mode = SpaceMode::Truncated;
    else if (mode != TTL_MODE_AUTO)
      throw ValidationError("unknown mode");
    *out = new ttl_space{ModelSpace::create(theta->theta, o)};
  });
}

void ttl_space_free(ttl_space* space) { delete space; }

int ttl_space_dimension(const ttl_space* space, int* out) {
  return guarded([&] {
    need(space, "space");
    need(out, "out");
    *out = space->space.dimension();
  });
}

int ttl_kernel_coeffs(const ttl_space* space, double re, double im, double* out, size_t capacity) {
  return guarded([&] {
    need(space, "space");
    need(out, "out");
    if (!space->space.exact()) throw ValidationError("kernel coefficients need an exact space");
    auto v = kernel_coeffs(space->space, KernelPoint::interior(cd(re, im)));
    if (capacity < 2 * static_cast<size_t>(v.size())) throw ValidationError("output buffer too small");
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      out[2 * i] = v(i).real();
      out[2 * i + 1] = v(i).imag();
    }
  });
}

int ttl_operator_build_polynomial(const ttl_space* space, const int* idx, const double* re, const double* im,
                                  size_t count, ttl_operator** out) {
  return guarded([&] {
    need(space, "space");
    need(out, "out");
    if (count && (!idx || !re || !im)) throw ValidationError("coefficient arrays are null");
    FourierPolynomial p;
    for (size_t j = 0; j < count; ++j) p.set(idx[j], p[idx[j]] + cd(re[j], im[j]));
    *out = new ttl_operator{build(space->space, SymbolSpec::polynomial(p))};
  });
}

int ttl_operator_from_matrix(const ttl_space* space, const double* data, size_t dim, ttl_operator** out) {
  return guarded([&] {
    need(space, "space");
    need(data, "data");
    need(out, "out");
    if (!space->space.exact() || static_cast<int>(dim) != space->space.dimension())
      throw ValidationError("matrix size does not match the space dimension");
    Eigen::MatrixXcd m(dim, dim);
    for (size_t i = 0; i < dim; ++i)
      for (size_t j = 0; j < dim; ++j) m(i, j) = cd(data[2 * (i * dim + j)], data[2 * (i * dim + j) + 1]);
    *out = new ttl_operator{TTOperator::from_matrix(space->space, m)};
  });
}

void ttl_operator_free(ttl_operator* op) { delete op; }

int ttl_operator_matrix(const ttl_operator* op, double* out, size_t capacity) {
  return guarded([&] {
    need(op, "op");
    need(out, "out");
    const auto& m = op->op.matrix();
    const size_t n = static_cast<size_t>(m.rows());
    if (capacity < 2 * n * n) throw ValidationError("output buffer too small");
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        out[2 * (i * n + j)] = m(i, j).real();
        out[2 * (i * n + j) + 1] = m(i, j).imag();
      }
  });
}

int ttl_operator_norm(const ttl_operator* op, double* out) {
  return guarded([&] {
    need(op, "op");
    need(out, "out");
    *out = operator_norm(op->op);
  });
}

int ttl_run(const char* command, const char* config_json, char** output) {
  return guarded([&] {
    need(command, "command");
    need(output, "output");
    *output = nullptr;
    auto cfg = config_json ? nlohmann::json::parse(config_json) : nlohmann::json::object();
    const std::string s = cmd::run(command, cfg);
    char* buf = static_cast<char*>(std::malloc(s.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *output = buf;
  });
}

void ttl_string_free(char* s) { std::free(s); }

size_t ttl_command_count(void) { return cmd::command_names().size(); }

const char* ttl_command_name(size_t i) {
  const auto& n = cmd::command_names();
  return i < n.size() ? n[i].c_str() : nullptr;
}

}  // extern "C"
