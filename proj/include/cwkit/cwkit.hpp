#pragma once

#include "cwkit/continued_fraction.hpp"
#include "cwkit/diagonals.hpp"
#include "cwkit/dyadic.hpp"
#include "cwkit/fraction.hpp"
#include "cwkit/integer.hpp"
#include "cwkit/minkowski.hpp"
#include "cwkit/path.hpp"
#include "cwkit/reduce.hpp"
#include "cwkit/render.hpp"
#include "cwkit/tree.hpp"
#include "cwkit/verify.hpp"
