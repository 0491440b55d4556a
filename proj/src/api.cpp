#include "relttk/relttk.h"

#include <exception>
#include <string>

#include "reports.hpp"

struct relttk_session {
  std::string output;
  std::string error;
};

namespace {

int finish(relttk_session* s, relttk::CommandResult result,
           const char** out) {
  s->output = std::move(result.output);
  s->error = std::move(result.message);
  if (out) *out = s->output.empty() ? nullptr : s->output.c_str();
  return result.code;
}

template <typename F>
int run(relttk_session* s, const char** out, F&& f) {
  if (!s) return RELTTK_BAD_INPUT;
  try {
    return finish(s, f(), out);
  } catch (const std::exception& e) {
    return finish(s, {RELTTK_BAD_INPUT, "", e.what()}, out);
  } catch (...) {
    return finish(s, {RELTTK_BAD_INPUT, "", "unknown failure"}, out);
  }
}

std::string arg(const char* text) { return text ? text : ""; }

}  // namespace

extern "C" {

relttk_session* relttk_session_new(void) { return new relttk_session(); }

void relttk_session_free(relttk_session* s) { delete s; }

const char* relttk_last_error(const relttk_session* s) {
  return s ? s->error.c_str() : "no session";
}

int relttk_analyze(relttk_session* s, const char* spec_text,
                   const char* format, const char** out) {
  return run(s, out, [&] {
    return relttk::cmd_analyze(arg(spec_text), arg(format));
  });
}

int relttk_whitehead(relttk_session* s, const char* spec_text,
                     const char* format, const char** out) {
  return run(s, out, [&] {
    return relttk::cmd_whitehead(arg(spec_text), arg(format));
  });
}

int relttk_lamination(relttk_session* s, const char* spec_text, int depth,
                      const char* format, const char** out) {
  return run(s, out, [&] {
    return relttk::cmd_lamination(arg(spec_text), depth, arg(format));
  });
}

int relttk_currents(relttk_session* s, const char* spec_text,
                    const char* class_word, int power_max, int depth,
                    const char* format, const char** out) {
  return run(s, out, [&] {
    return relttk::cmd_currents(arg(spec_text), arg(class_word), power_max,
                                depth, arg(format));
  });
}

int relttk_trees(relttk_session* s, const char* spec_text,
                 const char* tree_text, const char* sample, int power_max,
                 const char* tol, const char** out) {
  return run(s, out, [&] {
    return relttk::cmd_trees(arg(spec_text), arg(tree_text), arg(sample),
                             power_max, arg(tol));
  });
}

int relttk_pairing(relttk_session* s, const char* tree_text,
                   const char* class_word, int depth, const char** out) {
  return run(s, out, [&] {
    return relttk::cmd_pairing(arg(tree_text), arg(class_word), depth);
  });
}

int relttk_reproduce(relttk_session* s, const char** out) {
  return run(s, out, [] { return relttk::cmd_reproduce(); });
}

}  // extern "C"
