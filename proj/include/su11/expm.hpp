#pragma once

#include "su11/types.hpp"

namespace su11 {

// Pade(13) scaling and squaring
Mat expm(const Mat& X);

}  // namespace su11
