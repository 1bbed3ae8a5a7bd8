#pragma once

#include "families.hpp"
#include "interval.hpp"
#include "pairing.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "seqdist.hpp"
#include "special.hpp"
#include "testfn.hpp"
