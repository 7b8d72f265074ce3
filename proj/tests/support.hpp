#pragma once

#include <memory>
#include <string>

#include "ulat/instance.hpp"

namespace testsupport {

inline std::string fixture_path(const std::string& name) { return std::string(ULAT_FIXTURE_DIR) + "/" + name + ".json"; }

inline std::unique_ptr<ulat::Instance> fixture(const std::string& name) {
    return ulat::Instance::build(ulat::load_instance(fixture_path(name)));
}

}  // namespace testsupport
