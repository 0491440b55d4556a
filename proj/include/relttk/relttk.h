#ifndef RELTTK_H
#define RELTTK_H

#ifdef __cplusplus
extern "C" {
#endif

/* C interface to the train track toolkit.
 *
 * Every command runs against a session handle. A session owns the memory
 * of its last report and its last error message, so the pointers handed
 * back stay valid until the next call on the same session or until the
 * session is freed. Sessions are independent: use one per thread.
 *
 * Return codes follow the process exit convention:
 *   0  success
 *   1  a verification or convergence check failed
 *   2  bad input (unparseable file, unknown word, out-of-range parameter)
 *
 * Commands that can report partial results (analyze, currents, trees)
 * still fill *out on code 1; *out is NULL only when nothing was produced.
 */

typedef struct relttk_session relttk_session;

#define RELTTK_OK 0
#define RELTTK_VERIFY_FAILED 1
#define RELTTK_BAD_INPUT 2

relttk_session* relttk_session_new(void);
void relttk_session_free(relttk_session* s);

/* Message for the last failing call, empty string after a success. */
const char* relttk_last_error(const relttk_session* s);

/* Strata, growth rates, train track checks, Whitehead connectivity and
 * the irreducibility certificate. format: "json" or "dot". */
int relttk_analyze(relttk_session* s, const char* spec_text,
                   const char* format, const char** out);

/* Taken turns plus plain and relative Whitehead graphs.
 * format: "json" or "dot". */
int relttk_whitehead(relttk_session* s, const char* spec_text,
                     const char* format, const char** out);

/* Subwords of the attracting lamination up to the given depth.
 * format: "json" or "csv". */
int relttk_lamination(relttk_session* s, const char* spec_text, int depth,
                      const char* format, const char** out);

/* Iteration of a rational current toward the frequency current.
 * class_word uses letter syntax like "c" or "a b a' c".
 * format: "json" gives the experiment report, "csv" the limit table. */
int relttk_currents(relttk_session* s, const char* spec_text,
                    const char* class_word, int power_max, int depth,
                    const char* format, const char** out);

/* Normalized length spectra of a tree point under iteration, as CSV.
 * sample is a comma separated list of classes, tol a tolerance like
 * "1e-6", "0.000001" or "1/1000000". */
int relttk_trees(relttk_session* s, const char* spec_text,
                 const char* tree_text, const char* sample, int power_max,
                 const char* tol, const char** out);

/* Translation length and duality of one class against a tree point. */
int relttk_pairing(relttk_session* s, const char* tree_text,
                   const char* class_word, int depth, const char** out);

/* Built-in worked examples; one PASS or FAIL line per check. */
int relttk_reproduce(relttk_session* s, const char** out);

#ifdef __cplusplus
}
#endif

#endif
