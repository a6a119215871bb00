#pragma once

#include "pathcrystal/affine.hpp"
#include "pathcrystal/charfun.hpp"
#include "pathcrystal/common.hpp"
#include "pathcrystal/crystal.hpp"
#include "pathcrystal/decomp.hpp"
#include "pathcrystal/letters.hpp"
#include "pathcrystal/paths.hpp"
#include "pathcrystal/qpoly.hpp"
#include "pathcrystal/rational.hpp"
#include "pathcrystal/verify.hpp"
#include "pathcrystal/weight.hpp"
