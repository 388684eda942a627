#pragma once

#include "ffvar/characters.hpp"
#include "ffvar/cycint.hpp"
#include "ffvar/enumerate.hpp"
#include "ffvar/errors.hpp"
#include "ffvar/exec.hpp"
#include "ffvar/factor.hpp"
#include "ffvar/field.hpp"
#include "ffvar/hardy_littlewood.hpp"
#include "ffvar/lfunction.hpp"
#include "ffvar/numeric.hpp"
#include "ffvar/poly.hpp"
#include "ffvar/progressions.hpp"
#include "ffvar/residue.hpp"
#include "ffvar/rmt.hpp"
#include "ffvar/short_intervals.hpp"
