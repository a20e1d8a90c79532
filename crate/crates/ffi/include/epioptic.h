#ifndef EPIOPTIC_H
#define EPIOPTIC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EpiMethod {
  EPI_METHOD_CLASSICAL_EULER = 0,
  EPI_METHOD_RK4 = 1,
} EpiMethod;

typedef enum EpiStatus {
  EPI_STATUS_OK = 0,
  EPI_STATUS_NULL_POINTER = 1,
  EPI_STATUS_INVALID_ARGUMENT = 2,
  EPI_STATUS_DOMAIN = 3,
  EPI_STATUS_DIVERGENCE = 4,
  EPI_STATUS_NO_REAL_ROOT = 5,
  EPI_STATUS_NOT_BRACKETED = 6,
  EPI_STATUS_PANIC = 7,
} EpiStatus;

typedef enum EpiVariant {
  EPI_VARIANT_CONTROLLED = 0,
  EPI_VARIANT_UNCONTROLLED = 1,
  EPI_VARIANT_CONSTANT = 2,
} EpiVariant;

typedef enum EpiColumn {
  EPI_COLUMN_TIME = 0,
  EPI_COLUMN_SUSCEPTIBLE = 1,
  EPI_COLUMN_INFECTED = 2,
  EPI_COLUMN_REMOVED = 3,
  EPI_COLUMN_CONTROL = 4,
} EpiColumn;

/*
 Opaque simulation result.
 */
typedef struct EpiTrajectory EpiTrajectory;

typedef struct EpiScenario {
  double beta;
  double mu;
  double s0;
  double i0;
  double r0;
  double t_horizon;
  /*
   Attenuation of the control at half the horizon.
   */
  double q;
  double u_max;
  double step;
  enum EpiMethod method;
} EpiScenario;

typedef struct EpiSummary {
  double a;
  double u0;
  double decay_rate;
  double j_controlled;
  double j_uncontrolled;
  double j_constant_09;
  bool admissible;
} EpiSummary;

typedef struct EpiCost {
  double infection_burden;
  double control_effort;
  double total;
} EpiCost;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 The reference outbreak scenario.
 */
struct EpiScenario epi_scenario_default(void);

/*
 Message of the last failure on this thread, or null. The pointer stays
 valid until the next failing call on the same thread.
 */
const char *epi_last_error_message(void);

/*
 `A = 8 ln(Q)^2 / T^2`.

 # Safety
 `out` must be null or valid for writes.
 */
enum EpiStatus epi_cost_weight(double q, double t_horizon, double *out);

/*
 Calibrated `U0` for a scenario; 0 when there is no outbreak.

 # Safety
 `scenario` must be null or point to a valid `EpiScenario`; `out` must be
 null or valid for writes.
 */
enum EpiStatus epi_calibrate_u0(const struct EpiScenario *scenario, double *out);

/*
 `u(t) = U0 exp(-sqrt(A / 2) t)` with `A` calibrated from `q` and the horizon.

 # Safety
 `out` must be null or valid for writes.
 */
enum EpiStatus epi_control_value(double t, double q, double t_horizon, double u0, double *out);

/*
 Exponential integral `Ei(x)`, `x != 0`.

 # Safety
 `out` must be null or valid for writes.
 */
enum EpiStatus epi_exp_integral_ei(double x, double *out);

/*
 Exponential integral `E1(x)`, `x != 0`; negative `x` gives `-Ei(-x)`.

 # Safety
 `out` must be null or valid for writes.
 */
enum EpiStatus epi_exp_integral_e1(double x, double *out);

/*
 Calibrates the control and evaluates the cost of the controlled,
 uncontrolled and `u = 0.9` runs.

 # Safety
 `scenario` must be null or point to a valid `EpiScenario`; `out` must be
 null or valid for writes.
 */
enum EpiStatus epi_solve(const struct EpiScenario *scenario, struct EpiSummary *out);

/*
 Simulates one variant. `constant_u` is used only with
 `EpiVariant::Constant`. On success `*out` receives a new handle.

 # Safety
 `scenario` must be null or point to a valid `EpiScenario`; `out` must be
 null or valid for writes.
 */
enum EpiStatus epi_simulate(const struct EpiScenario *scenario,
                            enum EpiVariant variant,
                            double constant_u,
                            struct EpiTrajectory **out);

/*
 Number of grid points, 0 for a null handle.

 # Safety
 `handle` must be null or a live handle from [`epi_simulate`].
 */
size_t epi_trajectory_len(const struct EpiTrajectory *handle);

/*
 Copies one column into `buffer`, which must hold at least
 [`epi_trajectory_len`] values.

 # Safety
 `handle` must be null or a live handle; `buffer` must be null or valid
 for `capacity` writes.
 */
enum EpiStatus epi_trajectory_copy_column(const struct EpiTrajectory *handle,
                                          enum EpiColumn column,
                                          double *buffer,
                                          size_t capacity);

/*
 `J = int [I + A u^2 / 2] dt` on the trajectory's grid.

 # Safety
 `handle` must be null or a live handle; `out` must be null or valid for
 writes.
 */
enum EpiStatus epi_trajectory_cost(const struct EpiTrajectory *handle,
                                   double a,
                                   struct EpiCost *out);

/*
 Releases a handle. Null is ignored.

 # Safety
 `handle` must be null or a live handle that is not used afterwards.
 */
void epi_trajectory_free(struct EpiTrajectory *handle);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EPIOPTIC_H */
