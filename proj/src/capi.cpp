#include "misinfo/minet.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "json.hpp"
#include "misinfo/errors.hpp"
#include "misinfo/graph.hpp"
#include "misinfo/harness.hpp"

struct minet_bundle {
  misinfo::graph::NetworkBundle data;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return MINET_OK;
  } catch (const misinfo::ValidationError& e) {
    return fail(MINET_VALIDATION, e.what());
  } catch (const misinfo::ConvergenceError& e) {
    return fail(MINET_CONVERGENCE, e.what());
  } catch (const std::exception& e) {
    return fail(MINET_INTERNAL, e.what());
  } catch (...) {
    return fail(MINET_INTERNAL, "unknown error");
  }
}

}  // namespace

extern "C" {

const char* minet_version(void) {
  static const std::string v = misinfo::harness::version();
  return v.c_str();
}

const char* minet_last_error(void) { return g_last_error.c_str(); }

int minet_bundle_load(const char* path, minet_bundle** out) {
  if (!path || !out) return fail(MINET_VALIDATION, "null argument");
  return guarded([&] {
    auto* b = new minet_bundle{
        misinfo::graph::load_networks(path, misinfo::graph::FileFormat::Json)};
    *out = b;
  });
}

int minet_bundle_generate(const char* spec_json, minet_bundle** out) {
  if (!spec_json || !out) return fail(MINET_VALIDATION, "null argument");
  return guarded([&] {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(spec_json);
    } catch (const nlohmann::json::parse_error& e) {
      throw misinfo::ValidationError(std::string("spec parse error: ") + e.what());
    }
    misinfo::graph::SyntheticSpec spec;
    spec.seed = j.value("seed", spec.seed);
    spec.users = j.value("users", spec.users);
    spec.news = j.value("news", spec.news);
    spec.publishers = j.value("publishers", spec.publishers);
    spec.vocab = j.value("vocab", spec.vocab);
    spec.communities = j.value("communities", spec.communities);
    spec.intra_prob = j.value("intra_prob", spec.intra_prob);
    spec.inter_prob = j.value("inter_prob", spec.inter_prob);
    spec.fake_ratio = j.value("fake_ratio", spec.fake_ratio);
    spec.cred_noise = j.value("cred_noise", spec.cred_noise);
    *out = new minet_bundle{misinfo::graph::generate_synthetic(spec)};
  });
}

int minet_bundle_save(const minet_bundle* bundle, const char* path) {
  if (!bundle || !path) return fail(MINET_VALIDATION, "null argument");
  return guarded([&] {
    misinfo::graph::save_networks(bundle->data, path, misinfo::graph::FileFormat::Json);
  });
}

int minet_bundle_to_json(const minet_bundle* bundle, char** json_out) {
  if (!bundle || !json_out) return fail(MINET_VALIDATION, "null argument");
  return guarded([&] {
    char* s = dup_string(misinfo::graph::to_json_string(bundle->data));
    if (!s) throw std::bad_alloc();
    *json_out = s;
  });
}

void minet_bundle_free(minet_bundle* bundle) { delete bundle; }

int minet_run_task(const char* config_json, char** report_json) {
  if (!config_json || !report_json) return fail(MINET_VALIDATION, "null argument");
  return guarded([&] {
    char* s = dup_string(misinfo::harness::run(config_json));
    if (!s) throw std::bad_alloc();
    *report_json = s;
  });
}

void minet_string_free(char* s) { std::free(s); }

}  // extern "C"
