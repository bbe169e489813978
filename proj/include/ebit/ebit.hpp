#pragma once

// Umbrella header: the complete bipartite-entanglement toolkit.

#include "ebit/axioms.hpp"
#include "ebit/convert.hpp"
#include "ebit/errors.hpp"
#include "ebit/json_io.hpp"
#include "ebit/measures.hpp"
#include "ebit/numeric.hpp"
#include "ebit/ppt.hpp"
#include "ebit/protocols.hpp"
#include "ebit/sampling.hpp"
#include "ebit/schmidt.hpp"
#include "ebit/states.hpp"
