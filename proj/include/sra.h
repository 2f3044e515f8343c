/* SPDX-License-Identifier: Apache-2.0
 *
 * sra -- soft tentacle antenna array simulator
 * C interface to the simulator core: opaque handles, integer status codes,
 * and CSV export of sweep results, optimizer traces, array layouts and
 * channel matrices. All functions are thread-safe for distinct handles.
 */

#ifndef SRA_H
#define SRA_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sra_status {
    SRA_OK = 0,
    SRA_ERROR_INVALID_ARGUMENT = 1, /* null pointer or out-of-range value */
    SRA_ERROR_PARSE = 2,            /* malformed or invalid configuration */
    SRA_ERROR_DOMAIN = 3,           /* infeasible model input */
    SRA_ERROR_IO = 4,               /* file could not be read or written */
    SRA_ERROR_RANK_DEFICIENT = 5,   /* channel draw unusable after resampling */
    SRA_ERROR_INTERNAL = 6
} sra_status;

/* Library version string, e.g. "0.1.0". */
const char* sra_version(void);

/* Static description of a status code. */
const char* sra_status_message(sra_status status);

/* Detailed message of the most recent failure on the calling thread; empty
 * string when the last call succeeded. The pointer stays valid until the
 * next library call on the same thread. */
const char* sra_last_error(void);

/* ------------------------------------------------------------------ */
/* Experiment configuration                                           */

typedef struct sra_config sra_config;

sra_status sra_config_parse_file(const char* path, sra_config** out);
sra_status sra_config_parse_string(const char* json_text, sra_config** out);
/* JSON text of the built-in default configuration. */
const char* sra_default_config(void);
sra_status sra_config_set_base_seed(sra_config* config, uint64_t seed);
sra_status sra_config_set_output_path(sra_config* config, const char* path);
/* Pointer valid while the config lives. */
const char* sra_config_output_path(const sra_config* config);
void sra_config_free(sra_config* config);

/* ------------------------------------------------------------------ */
/* Monte-Carlo sweep                                                   */

typedef struct sra_sweep_result sra_sweep_result;

typedef struct sra_sweep_row {
    const char* architecture; /* valid while the result lives */
    const char* sweep_axis;
    double sweep_value;
    double mean_rate;
    double std_rate;
    int realizations;
    int failures;
} sra_sweep_row;

sra_status sra_sweep_run(const sra_config* config, sra_sweep_result** out);
size_t sra_sweep_row_count(const sra_sweep_result* result);
sra_status sra_sweep_row_get(const sra_sweep_result* result, size_t index,
                             sra_sweep_row* out);
sra_status sra_sweep_write_csv(const sra_sweep_result* result,
                               const char* path);
void sra_sweep_result_free(sra_sweep_result* result);

/* ------------------------------------------------------------------ */
/* Optimizer trace for a single realization                            */

typedef struct sra_trace sra_trace;

typedef struct sra_trace_row {
    int iteration;
    double sum_rate;
    double grad_norm;
    double step_norm;
    int accepted;
} sra_trace_row;

sra_status sra_trace_run(const sra_config* config, uint64_t realization,
                         sra_trace** out);
size_t sra_trace_row_count(const sra_trace* trace);
sra_status sra_trace_row_get(const sra_trace* trace, size_t index,
                             sra_trace_row* out);
double sra_trace_final_rate(const sra_trace* trace);
sra_status sra_trace_write_csv(const sra_trace* trace, const char* path);
void sra_trace_free(sra_trace* trace);

/* ------------------------------------------------------------------ */
/* Array geometry                                                      */

typedef struct sra_layout sra_layout;

typedef struct sra_array_params {
    int tentacles;              /* M >= 1 */
    int elements_per_tentacle;  /* N >= 1 */
    double arc_length;          /* <= 0 selects N * wavelength / 2 */
    double amplitude_max;
    double spatial_freq_max;
    double wavelength;
    double phase;
} sra_array_params;

/* amplitudes/spatial_freqs hold `tentacles` entries each. */
sra_status sra_layout_compute(const sra_array_params* params,
                              const double* amplitudes,
                              const double* spatial_freqs, sra_layout** out);
size_t sra_layout_element_count(const sra_layout* layout);
/* xyz receives 3 * element_count doubles, element-major (x, y, z). */
sra_status sra_layout_positions(const sra_layout* layout, double* xyz);
/* CSV columns m,n,x,y,z with 1-based tentacle/element indices. */
sra_status sra_layout_write_csv(const sra_layout* layout, const char* path);
void sra_layout_free(sra_layout* layout);

/* ------------------------------------------------------------------ */
/* Channel matrix dump                                                 */

typedef struct sra_channel sra_channel;

/* Channel of one realization under the config's operating point, at the
 * given deformation (pass NULL amplitudes/freqs for the undeformed array). */
sra_status sra_channel_compute(const sra_config* config, uint64_t realization,
                               const double* amplitudes,
                               const double* spatial_freqs, sra_channel** out);
sra_status sra_channel_dims(const sra_channel* channel, int* users,
                            int* elements);
sra_status sra_channel_entry(const sra_channel* channel, int user, int element,
                             double* re, double* im);
/* CSV columns k,element,re,im with 1-based indices. */
sra_status sra_channel_write_csv(const sra_channel* channel, const char* path);
void sra_channel_free(sra_channel* channel);

#ifdef __cplusplus
}
#endif

#endif /* SRA_H */
