#pragma once

#include "atlas.hpp"
#include "fft.hpp"
#include "interpolation.hpp"
#include "kernels.hpp"
#include "norms.hpp"
#include "params.hpp"
#include "quadrature.hpp"
#include "rates.hpp"
#include "smolyak.hpp"
#include "test_functions.hpp"
#include "trig_poly.hpp"
