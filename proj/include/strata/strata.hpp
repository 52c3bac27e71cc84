/** Convenience umbrella: the whole strata library. */
#pragma once

#include "strata/action.hpp"
#include "strata/build.hpp"
#include "strata/catalog.hpp"
#include "strata/complex.hpp"
#include "strata/core.hpp"
#include "strata/homology.hpp"
#include "strata/intersection.hpp"
#include "strata/io.hpp"
#include "strata/les.hpp"
#include "strata/perversity.hpp"
#include "strata/rank.hpp"
#include "strata/stratify.hpp"
