#pragma once
//
// apgabor: Gabor analysis of almost periodic functions on finite trigonometric
// polynomials. Umbrella header.
//

#include "ap_core.hpp"
#include "errors.hpp"
#include "frames.hpp"
#include "gabor.hpp"
#include "jacobi.hpp"
#include "random.hpp"
#include "windows.hpp"
