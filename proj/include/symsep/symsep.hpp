#pragma once

#include "symsep/error.hpp"
#include "symsep/linalg.hpp"
#include "symsep/symspace.hpp"
#include "symsep/criteria.hpp"
#include "symsep/states.hpp"
#include "symsep/search.hpp"
#include "symsep/extension.hpp"
#include "symsep/io.hpp"

namespace symsep {
inline constexpr const char* kVersion = "0.1.0";
}
