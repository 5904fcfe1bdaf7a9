/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 htype developers
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the htype library: H-type groups, their sub-Riemannian
 * geodesics from the origin, exponential-map inversion and cut-locus
 * classification. Objects are opaque handles released with the matching
 * *_free function. Every call returns an htype_status; on failure the
 * message for the calling thread is available from htype_last_error().
 * Vectors are passed as (pointer, length) pairs of doubles.
 */
#ifndef HTYPE_HTYPE_H_
#define HTYPE_HTYPE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HTYPE_BUILDING_LIBRARY)
#    define HTYPE_API __declspec(dllexport)
#  else
#    define HTYPE_API __declspec(dllimport)
#  endif
#else
#  define HTYPE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum htype_status {
  HTYPE_OK = 0,
  HTYPE_ERR_INVALID_ARGUMENT = 1,
  HTYPE_ERR_DIMENSION = 2,
  HTYPE_ERR_NO_MODULE = 3,
  HTYPE_ERR_RELATIONS = 4,
  HTYPE_ERR_DOMAIN = 5,
  HTYPE_ERR_NUMERICAL = 6,
  HTYPE_ERR_PARSE = 7,
  HTYPE_ERR_INTERNAL = 99
} htype_status;

typedef enum htype_target_class {
  HTYPE_CLASS_ORIGIN = 0,
  HTYPE_CLASS_HORIZONTAL = 1,
  HTYPE_CLASS_VERTICAL = 2,
  HTYPE_CLASS_GENERIC = 3
} htype_target_class;

typedef struct htype_algebra htype_algebra;
typedef struct htype_connection htype_connection;

/* Message describing the last failure on this thread ("" if none). */
HTYPE_API const char* htype_last_error(void);

/* Strings returned by the library are released with this. */
HTYPE_API void htype_string_free(char* s);

/* ---- algebra ---------------------------------------------------------- */

HTYPE_API htype_status htype_min_module_dim(size_t r, size_t* out);
HTYPE_API htype_status htype_algebra_build(size_t r, size_t m, htype_algebra** out);
HTYPE_API htype_status htype_algebra_from_json(const char* json, htype_algebra** out);
HTYPE_API htype_status htype_algebra_to_json(const htype_algebra* alg, char** out);
HTYPE_API void htype_algebra_free(htype_algebra* alg);
HTYPE_API htype_status htype_algebra_dims(const htype_algebra* alg, size_t* r, size_t* m);
HTYPE_API htype_status htype_algebra_verify(const htype_algebra* alg, double* max_violation);
/* Row-major copy of C^k (k is zero-based) into out[m*m]. */
HTYPE_API htype_status htype_algebra_matrix(const htype_algebra* alg, size_t k, double* out);

/* out[r] = [v, w] */
HTYPE_API htype_status htype_bracket(const htype_algebra* alg, const double* v, const double* w, double* out);
/* out[m] = J_Z v */
HTYPE_API htype_status htype_j_map(const htype_algebra* alg, const double* z, const double* v, double* out);
/* Row-major Omega(theta) into out[m*m]. */
HTYPE_API htype_status htype_omega(const htype_algebra* alg, const double* theta, double* out);

/* ---- geodesics -------------------------------------------------------- */

/* Point (x[m], z[r]) and horizontal velocity vx[m] at time t of the geodesic
 * with initial data (xdot0[m], theta[r]). Any output pointer may be NULL. */
HTYPE_API htype_status htype_geodesic_eval(const htype_algebra* alg, const double* xdot0, const double* theta,
                                           double t, double* x, double* z, double* vx);
/* Unsimplified vertical derivative; HTYPE_ERR_DOMAIN for theta = 0. */
HTYPE_API htype_status htype_geodesic_zdot_full(const htype_algebra* alg, const double* xdot0,
                                                const double* theta, double t, double* zdot);

/* ---- scalar profiles -------------------------------------------------- */

HTYPE_API htype_status htype_mu(double alpha, double* out);
HTYPE_API htype_status htype_nu(double alpha, double* out);
HTYPE_API htype_status htype_sinc(double u, double* out);

/* ---- connection problem ----------------------------------------------- */

/* alpha_cap <= 0 selects the default search range (8 pi). */
HTYPE_API htype_status htype_connect(const htype_algebra* alg, const double* x, const double* z, double alpha_cap,
                                     htype_connection** out);
HTYPE_API void htype_connection_free(htype_connection* conn);
HTYPE_API htype_status htype_connection_class(const htype_connection* conn, htype_target_class* out);
HTYPE_API htype_status htype_connection_distance(const htype_connection* conn, double* out);
HTYPE_API htype_status htype_connection_in_cut_locus(const htype_connection* conn, int* out);
HTYPE_API htype_status htype_connection_count(const htype_connection* conn, size_t* out);
/* Geodesic i: theta[r], xdot0[m], its length and minimizer flag. */
HTYPE_API htype_status htype_connection_geodesic(const htype_connection* conn, size_t i, double* theta,
                                                 double* xdot0, double* length, int* is_minimizer);
HTYPE_API htype_status htype_connection_to_json(const htype_connection* conn, char** out);
/* Parses and re-validates a serialized connection against alg. */
HTYPE_API htype_status htype_connection_from_json(const htype_algebra* alg, const char* json,
                                                  htype_connection** out);

/* Best feasible polyline length to (x, z); an independent upper estimate of
 * the distance from the origin. */
HTYPE_API htype_status htype_brute_distance(const htype_algebra* alg, const double* x, const double* z,
                                            int knot_count, int restarts, uint64_t seed, double* out);

#ifdef __cplusplus
}
#endif

#endif /* HTYPE_HTYPE_H_ */
