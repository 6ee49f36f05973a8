#pragma once

#include <string>

namespace wg {

enum class Verdict { exists, absent, indeterminate };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::exists: return "exists";
        case Verdict::absent: return "absent";
        default: return "indeterminate";
    }
}

}  // namespace wg
