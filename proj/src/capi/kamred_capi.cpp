// Copyright (C) 2026 The kamred authors.
// SPDX-License-Identifier: Apache-2.0

#include "kamred.h"

#include <cstring>
#include <string>

#include "../core/pipeline.hpp"

namespace {

thread_local std::string g_last_error;

kamred_status set_error(kamred::ErrorKind kind, const std::string& msg) {
  g_last_error = msg;
  switch (kind) {
    case kamred::ErrorKind::Io: return KAMRED_ERR_IO;
    case kamred::ErrorKind::Config: return KAMRED_ERR_CONFIG;
    case kamred::ErrorKind::Domain: return KAMRED_ERR_DOMAIN;
    case kamred::ErrorKind::Numeric: return KAMRED_ERR_NUMERIC;
  }
  return KAMRED_ERR_INTERNAL;
}

template <typename F>
kamred_status guarded(F&& f) {
  try {
    return f();
  } catch (const kamred::Error& e) {
    return set_error(e.kind(), e.what());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return KAMRED_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return KAMRED_ERR_INTERNAL;
  }
}

} // namespace

struct kamred_config {
  kamred::RunConfig cfg;
};

extern "C" {

const char* kamred_version(void) { return "kamred 1.0.0"; }

const char* kamred_last_error(void) { return g_last_error.c_str(); }

kamred_status kamred_config_open(const char* path, kamred_config** out) {
  if (!path || !out) {
    g_last_error = "null argument";
    return KAMRED_ERR_ARGUMENT;
  }
  *out = nullptr;
  return guarded([&]() {
    auto* handle = new kamred_config{kamred::load_run_config(path)};
    *out = handle;
    return KAMRED_OK;
  });
}

kamred_status kamred_config_parse(const char* text, const char* base_dir,
                                  kamred_config** out) {
  if (!text || !out) {
    g_last_error = "null argument";
    return KAMRED_ERR_ARGUMENT;
  }
  *out = nullptr;
  return guarded([&]() {
    auto* handle = new kamred_config{
        kamred::parse_run_config(text, base_dir ? base_dir : ".")};
    *out = handle;
    return KAMRED_OK;
  });
}

void kamred_config_close(kamred_config* cfg) { delete cfg; }

kamred_status kamred_run_stage(kamred_config* cfg, const char* stage,
                               const char* out_dir) {
  if (!cfg || !stage || !out_dir) {
    g_last_error = "null argument";
    return KAMRED_ERR_ARGUMENT;
  }
  return guarded([&]() {
    kamred::Pipeline pipeline(cfg->cfg, out_dir);
    pipeline.run_stage(stage);
    return KAMRED_OK;
  });
}

kamred_status kamred_run_pipeline(kamred_config* cfg, const char* out_dir) {
  if (!cfg || !out_dir) {
    g_last_error = "null argument";
    return KAMRED_ERR_ARGUMENT;
  }
  return guarded([&]() {
    kamred::Pipeline pipeline(cfg->cfg, out_dir);
    pipeline.run_selected();
    return KAMRED_OK;
  });
}

kamred_status kamred_selfcheck(const char* json_path, char* summary,
                               size_t summary_len) {
  return guarded([&]() {
    std::string text;
    bool ok = kamred::run_selfcheck(json_path ? json_path : "", &text);
    if (summary && summary_len > 0) {
      size_t n = std::min(summary_len - 1, text.size());
      std::memcpy(summary, text.data(), n);
      summary[n] = '\0';
    }
    if (!ok) {
      g_last_error = "one or more selfcheck suites failed";
      return KAMRED_ERR_NUMERIC;
    }
    return KAMRED_OK;
  });
}

} // extern "C"
