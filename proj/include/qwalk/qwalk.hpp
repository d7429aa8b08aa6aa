#ifndef QWALK_QWALK_HPP
#define QWALK_QWALK_HPP

#include "qwalk/half_int.hpp"
#include "qwalk/complex_matrix.hpp"
#include "qwalk/rotation.hpp"
#include "qwalk/walk.hpp"
#include "qwalk/quadrature.hpp"
#include "qwalk/limit.hpp"
#include "qwalk/tensor.hpp"
#include "qwalk/presets.hpp"

#endif
