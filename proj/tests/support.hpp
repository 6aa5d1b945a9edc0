#pragma once

#include "hspec/sampling.hpp"

namespace hspec::testing {
using namespace hspec::sampling;
}  // namespace hspec::testing
