#ifndef C4Q_C4Q_H
#define C4Q_C4Q_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define C4Q_API __declspec(dllexport)
#else
#define C4Q_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum c4q_status {
    C4Q_OK = 0,
    C4Q_ERR_INVALID_ARGUMENT,
    C4Q_ERR_PARAMETER_MISSING,
    C4Q_ERR_ARITY_MISMATCH,
    C4Q_ERR_EMPTY_INPUT,
    C4Q_ERR_AMBIGUOUS_GATE,
    C4Q_ERR_AMBIGUOUS_STATE,
    C4Q_ERR_AMBIGUOUS_AXIS,
    C4Q_ERR_ANGLE_PARSE,
    C4Q_ERR_TEMPLATE_VALIDATION,
    C4Q_ERR_CORPUS_TOO_SMALL,
    C4Q_ERR_DEGENERATE_CORPUS,
    C4Q_ERR_VERSION_MISMATCH,
    C4Q_ERR_NOT_FOUND,
    C4Q_ERR_SESSION_CLOSED,
    C4Q_ERR_IO,
    C4Q_ERR_INTERNAL
} c4q_status;

typedef struct c4q_model c4q_model;
typedef struct c4q_service c4q_service;
typedef struct c4q_server c4q_server;

/* Strings returned through char** out-parameters are owned by the caller and
 * released with c4q_string_free. Out-parameters are untouched on failure.
 * Handles are released with their matching _free; NULL is accepted. */

C4Q_API const char* c4q_version(void);
C4Q_API const char* c4q_status_name(c4q_status status);
/* Message of the last failed call on the calling thread, "" if none. */
C4Q_API const char* c4q_last_error(void);
C4Q_API void c4q_string_free(char* s);

/* ---- gate engine ----
 * Gates are named by key ("Z", "SDG", "RX", "CNOT", ...), states by key
 * ("ZERO", "ONE", "PLUS", "PHI_PLUS", ...). params_json is NULL or
 * {"phase": rad} / {"angle": rad}. */

C4Q_API c4q_status c4q_define(const char* gate, char** out_text);
C4Q_API c4q_status c4q_draw(const char* gate, const char* params_json, char** out_text);
/* {"ket": "−|1⟩", "amplitudes": [[re, im], ...]} */
C4Q_API c4q_status c4q_apply(const char* gate, const char* params_json, const char* state, char** out_json);
/* {"dim": n, "entries": [[re, im], ...]} row-major */
C4Q_API c4q_status c4q_gate_matrix(const char* gate, const char* params_json, char** out_json);

/* ---- data generation ----
 * Writes classification.jsonl, qa.jsonl and manifest.json into out_dir.
 * templates_path NULL uses the built-in template bank. */
C4Q_API c4q_status c4q_generate(uint64_t seed, const char* out_dir, const char* templates_path, char** out_manifest_json);

/* ---- classifier ---- */

/* Splits the corpus file (train share = ratio), trains on the train part
 * and reports held-out metrics as JSON. */
C4Q_API c4q_status c4q_model_train(const char* corpus_path, double ratio, uint64_t seed, c4q_model** out_model,
                                   char** out_report_json);
/* Trains on the built-in templates' classification corpus for `seed`. */
C4Q_API c4q_status c4q_model_builtin(uint64_t seed, c4q_model** out_model);
C4Q_API c4q_status c4q_model_load(const char* path, c4q_model** out_model);
C4Q_API c4q_status c4q_model_save(const c4q_model* model, const char* path);
C4Q_API c4q_status c4q_model_serialize(const c4q_model* model, char** out_json);
C4Q_API void c4q_model_free(c4q_model* model);

/* Metrics report for a corpus file. Classification corpora are scored on
 * the held-out share (1 - ratio) with the model; QA corpora score slot
 * extraction on their held-out share and ignore the model. ratio 0 scores
 * the whole file; a negative ratio picks 0.8 for classification and 0.5 for
 * QA corpora. */
C4Q_API c4q_status c4q_evaluate(const c4q_model* model, const char* corpus_path, double ratio, uint64_t seed,
                                char** out_report_json);

/* ParsedQuery JSON for one question. */
C4Q_API c4q_status c4q_interpret(const c4q_model* model, const char* text, char** out_json);

/* ---- chat service ----
 * data_dir NULL keeps sessions and the training log in memory; otherwise
 * sessions live in data_dir/sessions and the log in
 * data_dir/training_log.jsonl. The service keeps its own model reference. */

C4Q_API c4q_status c4q_service_create(const c4q_model* model, const char* data_dir, c4q_service** out_service);
C4Q_API void c4q_service_free(c4q_service* service);
/* {"session_id": id, "greeting": message} */
C4Q_API c4q_status c4q_service_create_session(c4q_service* service, char** out_json);
/* {"messages": [new bot messages]} */
C4Q_API c4q_status c4q_service_post_message(c4q_service* service, const char* session_id, const char* text,
                                            char** out_json);
/* {"messages": [transcript]} */
C4Q_API c4q_status c4q_service_list_messages(c4q_service* service, const char* session_id, char** out_json);
C4Q_API c4q_status c4q_service_end_session(c4q_service* service, const char* session_id);
C4Q_API c4q_status c4q_service_training_log_size(const c4q_service* service, size_t* out_size);
/* Routes one HTTP request without a socket. out_body may be "" (204). */
C4Q_API c4q_status c4q_service_handle_http(c4q_service* service, const char* method, const char* path,
                                           const char* body, int* out_status, char** out_body);

/* ---- HTTP server ----
 * listen is "host:port"; port 0 picks a free port. The service must outlive
 * the server. */

C4Q_API c4q_status c4q_server_create(c4q_service* service, const char* listen, c4q_server** out_server);
C4Q_API int c4q_server_port(const c4q_server* server);
/* Blocks until c4q_server_stop is called from another thread. */
C4Q_API c4q_status c4q_server_run(c4q_server* server);
C4Q_API void c4q_server_stop(c4q_server* server);
C4Q_API void c4q_server_free(c4q_server* server);

#ifdef __cplusplus
}
#endif

#endif
