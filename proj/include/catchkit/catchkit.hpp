#pragma once

#include "catchkit/compress.hpp"
#include "catchkit/errors.hpp"
#include "catchkit/experiments.hpp"
#include "catchkit/leastsquares.hpp"
#include "catchkit/linalg.hpp"
#include "catchkit/matrix.hpp"
#include "catchkit/nnls.hpp"
#include "catchkit/points.hpp"
#include "catchkit/pointsets.hpp"
#include "catchkit/polyspace.hpp"
#include "catchkit/simplex.hpp"
