// SPDX-FileCopyrightText: Copyright (c) 2026 htype developers
// SPDX-License-Identifier: Apache-2.0

#include "htype/htype.h"

#include <cstring>
#include <new>
#include <string>

#include "htype/connect.hpp"
#include "htype/numeric.hpp"

struct htype_algebra {
  htype::Algebra alg;
};

struct htype_connection {
  htype::ConnectionResult result;
  std::size_t r;
  std::size_t m;
};

namespace {

thread_local std::string g_last_error;

htype_status to_status(htype::ErrorCode code) {
  switch (code) {
    case htype::ErrorCode::kInvalidArgument: return HTYPE_ERR_INVALID_ARGUMENT;
    case htype::ErrorCode::kDimensionMismatch: return HTYPE_ERR_DIMENSION;
    case htype::ErrorCode::kNoCliffordModule: return HTYPE_ERR_NO_MODULE;
    case htype::ErrorCode::kRelationViolation: return HTYPE_ERR_RELATIONS;
    case htype::ErrorCode::kDomain: return HTYPE_ERR_DOMAIN;
    case htype::ErrorCode::kNumerical: return HTYPE_ERR_NUMERICAL;
    case htype::ErrorCode::kParse: return HTYPE_ERR_PARSE;
  }
  return HTYPE_ERR_INTERNAL;
}

template <typename F>
htype_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return HTYPE_OK;
  } catch (const htype::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return HTYPE_ERR_INTERNAL;
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw htype::Error(htype::ErrorCode::kInvalidArgument, std::string(what) + " must not be null");
}

htype::Vector view(const double* data, std::size_t n) {
  require(data, "input vector");
  return Eigen::Map<const htype::Vector>(data, static_cast<Eigen::Index>(n));
}

void copy_out(const htype::Vector& v, double* out) {
  if (out != nullptr) std::memcpy(out, v.data(), sizeof(double) * static_cast<std::size_t>(v.size()));
}

void copy_row_major(const htype::Matrix& a, double* out) {
  require(out, "output matrix");
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out[i * a.cols() + j] = a(i, j);
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

htype::GeodesicSpec make_spec(const htype::Algebra& alg, const double* xdot0, const double* theta) {
  return {view(xdot0, alg.m()), htype::Covector(view(theta, alg.r()))};
}

}  // namespace

extern "C" {

const char* htype_last_error(void) { return g_last_error.c_str(); }

void htype_string_free(char* s) { delete[] s; }

htype_status htype_min_module_dim(size_t r, size_t* out) {
  return guarded([&] {
    require(out, "out");
    *out = htype::min_module_dim(r);
  });
}

htype_status htype_algebra_build(size_t r, size_t m, htype_algebra** out) {
  return guarded([&] {
    require(out, "out");
    *out = new htype_algebra{htype::build_algebra(r, m)};
  });
}

htype_status htype_algebra_from_json(const char* json, htype_algebra** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new htype_algebra{htype::algebra_from_json(json)};
  });
}

htype_status htype_algebra_to_json(const htype_algebra* alg, char** out) {
  return guarded([&] {
    require(alg, "algebra");
    require(out, "out");
    *out = dup_string(htype::algebra_to_json(alg->alg));
  });
}

void htype_algebra_free(htype_algebra* alg) { delete alg; }

htype_status htype_algebra_dims(const htype_algebra* alg, size_t* r, size_t* m) {
  return guarded([&] {
    require(alg, "algebra");
    if (r != nullptr) *r = alg->alg.r();
    if (m != nullptr) *m = alg->alg.m();
  });
}

htype_status htype_algebra_verify(const htype_algebra* alg, double* max_violation) {
  return guarded([&] {
    require(alg, "algebra");
    require(max_violation, "out");
    *max_violation = htype::verify_relations(alg->alg);
  });
}

htype_status htype_algebra_matrix(const htype_algebra* alg, size_t k, double* out) {
  return guarded([&] {
    require(alg, "algebra");
    if (k >= alg->alg.r()) throw htype::Error(htype::ErrorCode::kInvalidArgument, "matrix index out of range");
    copy_row_major(alg->alg.c(k), out);
  });
}

htype_status htype_bracket(const htype_algebra* alg, const double* v, const double* w, double* out) {
  return guarded([&] {
    require(alg, "algebra");
    require(out, "out");
    copy_out(htype::bracket(alg->alg, view(v, alg->alg.m()), view(w, alg->alg.m())), out);
  });
}

htype_status htype_j_map(const htype_algebra* alg, const double* z, const double* v, double* out) {
  return guarded([&] {
    require(alg, "algebra");
    require(out, "out");
    copy_out(htype::j_map(alg->alg, view(z, alg->alg.r()), view(v, alg->alg.m())), out);
  });
}

htype_status htype_omega(const htype_algebra* alg, const double* theta, double* out) {
  return guarded([&] {
    require(alg, "algebra");
    copy_row_major(htype::omega(alg->alg, htype::Covector(view(theta, alg->alg.r()))), out);
  });
}

htype_status htype_geodesic_eval(const htype_algebra* alg, const double* xdot0, const double* theta, double t,
                                 double* x, double* z, double* vx) {
  return guarded([&] {
    require(alg, "algebra");
    const htype::GeodesicSample s = htype::eval_geodesic(alg->alg, make_spec(alg->alg, xdot0, theta), t);
    copy_out(s.point.x, x);
    copy_out(s.point.z, z);
    copy_out(s.velocity_x, vx);
  });
}

htype_status htype_geodesic_zdot_full(const htype_algebra* alg, const double* xdot0, const double* theta, double t,
                                      double* zdot) {
  return guarded([&] {
    require(alg, "algebra");
    require(zdot, "out");
    copy_out(htype::zdot_full(alg->alg, make_spec(alg->alg, xdot0, theta), t), zdot);
  });
}

htype_status htype_mu(double alpha, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = htype::mu(alpha);
  });
}

htype_status htype_nu(double alpha, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = htype::nu(alpha);
  });
}

htype_status htype_sinc(double u, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = htype::sinc_like(u);
  });
}

htype_status htype_connect(const htype_algebra* alg, const double* x, const double* z, double alpha_cap,
                           htype_connection** out) {
  return guarded([&] {
    require(alg, "algebra");
    require(out, "out");
    htype::ConnectOptions opts;
    if (alpha_cap > 0) opts.alpha_cap = alpha_cap;
    const htype::GroupPoint target{view(x, alg->alg.m()), view(z, alg->alg.r())};
    *out = new htype_connection{htype::classify(alg->alg, target, opts), alg->alg.r(), alg->alg.m()};
  });
}

void htype_connection_free(htype_connection* conn) { delete conn; }

htype_status htype_connection_class(const htype_connection* conn, htype_target_class* out) {
  return guarded([&] {
    require(conn, "connection");
    require(out, "out");
    *out = static_cast<htype_target_class>(conn->result.target_class);
  });
}

htype_status htype_connection_distance(const htype_connection* conn, double* out) {
  return guarded([&] {
    require(conn, "connection");
    require(out, "out");
    *out = conn->result.distance;
  });
}

htype_status htype_connection_in_cut_locus(const htype_connection* conn, int* out) {
  return guarded([&] {
    require(conn, "connection");
    require(out, "out");
    *out = conn->result.in_cut_locus ? 1 : 0;
  });
}

htype_status htype_connection_count(const htype_connection* conn, size_t* out) {
  return guarded([&] {
    require(conn, "connection");
    require(out, "out");
    *out = conn->result.geodesics.size();
  });
}

htype_status htype_connection_geodesic(const htype_connection* conn, size_t i, double* theta, double* xdot0,
                                       double* length, int* is_minimizer) {
  return guarded([&] {
    require(conn, "connection");
    if (i >= conn->result.geodesics.size())
      throw htype::Error(htype::ErrorCode::kInvalidArgument, "geodesic index out of range");
    const auto& g = conn->result.geodesics[i];
    copy_out(g.spec.theta.values(), theta);
    copy_out(g.spec.xdot0, xdot0);
    if (length != nullptr) *length = g.length;
    if (is_minimizer != nullptr) *is_minimizer = g.is_minimizer ? 1 : 0;
  });
}

htype_status htype_connection_to_json(const htype_connection* conn, char** out) {
  return guarded([&] {
    require(conn, "connection");
    require(out, "out");
    *out = dup_string(htype::connection_to_json(conn->result));
  });
}

htype_status htype_connection_from_json(const htype_algebra* alg, const char* json, htype_connection** out) {
  return guarded([&] {
    require(alg, "algebra");
    require(json, "json");
    require(out, "out");
    *out = new htype_connection{htype::connection_from_json(alg->alg, json), alg->alg.r(), alg->alg.m()};
  });
}

htype_status htype_brute_distance(const htype_algebra* alg, const double* x, const double* z, int knot_count,
                                  int restarts, uint64_t seed, double* out) {
  return guarded([&] {
    require(alg, "algebra");
    require(out, "out");
    const htype::GroupPoint target{view(x, alg->alg.m()), view(z, alg->alg.r())};
    *out = htype::brute_distance(alg->alg, target, knot_count, restarts, seed).length;
  });
}

}  // extern "C"
