/* Copyright 2026 pwlship contributors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the pwlship solvers.  All functions return a status code;
 * results come back through opaque handles or malloc'd strings released
 * with the matching *_free call.  Error details are available through
 * pwlship_last_error() (thread local).
 */

#ifndef PWLSHIP_PWLSHIP_H
#define PWLSHIP_PWLSHIP_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pwlship_status {
  PWLSHIP_OK = 0,
  PWLSHIP_INFEASIBLE = 1,
  PWLSHIP_ERR_PARSE = 2,
  PWLSHIP_ERR_IO = 3,
  PWLSHIP_ERR_INVALID = 4,
  PWLSHIP_ERR_INTERNAL = 5
} pwlship_status;

typedef struct pwlship_instance pwlship_instance;
typedef struct pwlship_solution pwlship_solution;

const char* pwlship_version(void);

/* Last error message of the calling thread; empty string if none. */
const char* pwlship_last_error(void);

/* ---- instances ------------------------------------------------------- */

/* Loads an instance file (route evaluation or lot sizing). */
pwlship_status pwlship_instance_load_file(const char* path,
                                          pwlship_instance** out);
pwlship_status pwlship_instance_from_json(const char* json_text,
                                          pwlship_instance** out);
pwlship_status pwlship_instance_to_json(const pwlship_instance* inst,
                                        char** out_json);
pwlship_status pwlship_instance_save_file(const pwlship_instance* inst,
                                          const char* path);
void pwlship_instance_free(pwlship_instance* inst);

int pwlship_instance_n(const pwlship_instance* inst);
int pwlship_instance_is_lswrc(const pwlship_instance* inst);
int pwlship_instance_has_tmax(const pwlship_instance* inst);

/* ---- generators ------------------------------------------------------ */

/* params: {"n":int, "qmax_class":"small|medium|large",
 *          "theta_class":"small|medium|large", "seed":uint,
 *          "config":{...overrides...}} */
pwlship_status pwlship_generate_lswrc(const char* params_json,
                                      pwlship_instance** out);

/* params: {"qmax":number, "seed":uint, "base_path":string} or
 *         {"qmax":number, "seed":uint, "synthetic_n":int,
 *          "synthetic_seed":uint}; optional "config":{"nn_k":int} */
pwlship_status pwlship_generate_srltp(const char* params_json,
                                      pwlship_instance** out);

/* ---- solving --------------------------------------------------------- */

/* options: {"method":"dp|dp3d|bbdp|auto", "seed":uint,
 *           "integer_mode":"auto|on|off", "force_empty_end":bool}
 * A lot sizing instance is reduced to its route form first; the returned
 * solution is expressed in reduced terms.  Returns PWLSHIP_INFEASIBLE when
 * no feasible route exists. */
pwlship_status pwlship_solve(const pwlship_instance* inst,
                             const char* options_json,
                             pwlship_solution** out);

double pwlship_solution_objective(const pwlship_solution* sol);
double pwlship_solution_duration(const pwlship_solution* sol);
/* -1 when the method produced no dual bound / node count. */
double pwlship_solution_dual_bound(const pwlship_solution* sol);
long pwlship_solution_nodes_expanded(const pwlship_solution* sol);
pwlship_status pwlship_solution_to_json(const pwlship_solution* sol,
                                        char** out_json);
void pwlship_solution_free(pwlship_solution* sol);

/* ---- lot sizing reports ---------------------------------------------- */

/* Savings against lot-for-lot:
 * {"z_l4l":..,"z_opt":..,"dz":..,"dz_prod":..,"dz_setup":..,"dz_inv":..} */
pwlship_status pwlship_lswrc_savings(const pwlship_instance* inst,
                                     const pwlship_solution* sol,
                                     char** out_json);

/* ---- MIP export ------------------------------------------------------ */

/* variant: "sos2" | "alpha" | "beta" */
pwlship_status pwlship_mip_export(const pwlship_instance* inst,
                                  const char* variant, const char* path);

/* ---- memory ---------------------------------------------------------- */

void pwlship_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PWLSHIP_PWLSHIP_H */
