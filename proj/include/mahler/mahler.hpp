#pragma once

#include "mahler/core.hpp"
#include "mahler/fourier.hpp"
#include "mahler/body.hpp"
#include "mahler/santalo.hpp"
#include "mahler/minkowski.hpp"
#include "mahler/affine_metrics.hpp"
#include "mahler/symmetrize.hpp"
#include "mahler/lab.hpp"
#include "mahler/io.hpp"
