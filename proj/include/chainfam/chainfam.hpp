#pragma once

#include "chainfam/cache.hpp"
#include "chainfam/conjectures.hpp"
#include "chainfam/constructions.hpp"
#include "chainfam/core.hpp"
#include "chainfam/predicates.hpp"
#include "chainfam/proofcheck.hpp"
#include "chainfam/search.hpp"
#include "chainfam/sweep.hpp"
#include "chainfam/weights.hpp"
