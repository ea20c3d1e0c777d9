#include "afcdm/kernels.hpp"

#include <cstdlib>

namespace afcdm::kernels {

const Table* avx2_table_if_supported();
const Table* neon_table_if_supported();

namespace {

const Table* pick_default() {
    if (const char* env = std::getenv("AFCDM_KERNELS")) {
        const std::string want(env);
        if (want == "scalar") return &scalar_table();
        if (want == "avx2")
            if (const Table* t = avx2_table_if_supported()) return t;
        if (want == "neon")
            if (const Table* t = neon_table_if_supported()) return t;
        // unknown or unsupported request falls through to autodetect
    }
    if (const Table* t = avx2_table_if_supported()) return t;
    if (const Table* t = neon_table_if_supported()) return t;
    return &scalar_table();
}

const Table*& active_slot() {
    static const Table* active = pick_default();
    return active;
}

}  // namespace

const Table& active_table() { return *active_slot(); }

bool set_backend(const std::string& name) {
    if (name == "scalar") {
        active_slot() = &scalar_table();
        return true;
    }
    if (name == "avx2") {
        if (const Table* t = avx2_table_if_supported()) {
            active_slot() = t;
            return true;
        }
        return false;
    }
    if (name == "neon") {
        if (const Table* t = neon_table_if_supported()) {
            active_slot() = t;
            return true;
        }
        return false;
    }
    return false;
}

std::string backend_name() { return active_table().name; }

}  // namespace afcdm::kernels
