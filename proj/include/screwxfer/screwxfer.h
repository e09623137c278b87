#ifndef SCREWXFER_SCREWXFER_H
#define SCREWXFER_SCREWXFER_H

#include <stddef.h>
#include <stdint.h>

#if defined(SCREWXFER_BUILDING)
#define SX_API __attribute__((visibility("default")))
#else
#define SX_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sx_status {
  SX_OK = 0,
  SX_ERR_DOMAIN = 1,
  SX_ERR_PARSE = 2,
  SX_ERR_JOINT_LIMIT = 3,
  SX_ERR_SINGULARITY_STALL = 4,
  SX_ERR_NOT_CONVERGED = 5,
  SX_ERR_CORNER_UNDEFINED = 6,
  SX_ERR_DEGENERATE_LINE = 7,
  SX_ERR_NO_VERTICAL_INTERSECTION = 8,
  SX_ERR_IO = 9,
  SX_ERR_INVALID_ARGUMENT = 10,
  SX_ERR_INTERNAL = 11
} sx_status;

/* Message for the last failing call on this thread; "" after success. */
SX_API const char* sx_last_error(void);
SX_API const char* sx_status_name(sx_status status);
SX_API const char* sx_version(void);

/* Strings returned through char** out-parameters are owned by the caller. */
SX_API void sx_string_free(char* s);

/* Poses are 7 doubles: unit quaternion w, x, y, z then translation x, y, z. */
SX_API sx_status sx_pose_compose(const double a[7], const double b[7], double out[7]);
SX_API sx_status sx_pose_sclerp(const double g0[7], const double g1[7], double tau, double out[7]);

typedef struct sx_arm sx_arm;
SX_API sx_status sx_arm_default(sx_arm** out);
SX_API sx_status sx_arm_from_json(const char* json, sx_arm** out);
SX_API sx_status sx_arm_to_json(const sx_arm* arm, char** json_out);
SX_API size_t sx_arm_joint_count(const sx_arm* arm);
SX_API sx_status sx_arm_forward_kinematics(const sx_arm* arm, const double* q, size_t n, double pose_out[7]);
SX_API void sx_arm_free(sx_arm* arm);

typedef struct sx_demo sx_demo;
SX_API sx_status sx_demo_from_json(const char* json, sx_demo** out);
/* Scripted pour on the demo geometry, joint samples for `arm`. */
SX_API sx_status sx_demo_synthetic(const sx_arm* arm, sx_demo** out);
SX_API sx_status sx_demo_to_json(const sx_demo* demo, char** json_out);
SX_API void sx_demo_free(sx_demo* demo);

typedef struct sx_instance sx_instance;
SX_API sx_status sx_instance_from_json(const char* json, sx_instance** out);
SX_API sx_status sx_instance_to_json(const sx_instance* inst, char** json_out);
SX_API void sx_instance_free(sx_instance* inst);

typedef enum sx_method { SX_METHOD_CFRAME = 0, SX_METHOD_BASELINE = 1 } sx_method;

typedef struct sx_options {
  double seg_tol;
  double step;
  double fill_tilt_deg;
  sx_method method;
} sx_options;

SX_API void sx_options_default(sx_options* opts);

/* Constant-screw guiding poses of the demonstration, world frame. */
SX_API sx_status sx_segment(const sx_arm* arm, const sx_demo* demo, double seg_tol, char** json_out);

/* Demo motion-transfer frames, plus the new-instance frames when `inst` is
   not NULL. */
SX_API sx_status sx_assign_frames(const sx_arm* arm, const sx_demo* demo, const sx_instance* inst,
                                  const sx_options* opts, char** json_out);

/* Guiding poses transferred to `inst` by both methods. */
SX_API sx_status sx_transfer(const sx_arm* arm, const sx_demo* demo, const sx_instance* inst, const sx_options* opts,
                             char** json_out);

typedef struct sx_plan_result sx_plan_result;
SX_API sx_status sx_plan(const sx_arm* arm, const sx_demo* demo, const sx_instance* inst, const sx_options* opts,
                         sx_plan_result** out);
SX_API int sx_plan_result_collision_free(const sx_plan_result* r);
SX_API sx_status sx_plan_result_json(const sx_plan_result* r, char** json_out);
SX_API sx_status sx_plan_result_svg(const sx_plan_result* r, char** svg_out);
SX_API sx_status sx_plan_result_tilt_csv(const sx_plan_result* r, char** csv_out);
SX_API void sx_plan_result_free(sx_plan_result* r);

/* Top-down SVG of the transferred guiding poses without planning. */
SX_API sx_status sx_plot_svg(const sx_arm* arm, const sx_demo* demo, const sx_instance* inst, const sx_options* opts,
                             char** svg_out);

/* Runs the category benchmark. `config_json` may be NULL. Nonzero `seed` and
   `per_cell`, and positive `opts` fields, override it; the method field is
   ignored. threads = 0 uses SCREWXFER_THREADS or the hardware concurrency. */
SX_API sx_status sx_bench_run(const sx_arm* arm, const sx_demo* demo, const char* config_json, uint64_t seed,
                              int per_cell, const sx_options* opts, unsigned threads, char** json_out, char** csv_out);

#ifdef __cplusplus
}
#endif

#endif
