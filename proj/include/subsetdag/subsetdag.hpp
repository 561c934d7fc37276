#pragma once

#include "subsetdag/errors.hpp"
#include "subsetdag/graph.hpp"
#include "subsetdag/intervention.hpp"
#include "subsetdag/chordal.hpp"
#include "subsetdag/generate.hpp"
#include "subsetdag/vertex_cover.hpp"
#include "subsetdag/meek.hpp"
#include "subsetdag/hasse.hpp"
#include "subsetdag/interval_stabbing.hpp"
#include "subsetdag/verification.hpp"
#include "subsetdag/search.hpp"
#include "subsetdag/brute_oracle.hpp"
#include "subsetdag/io.hpp"
#include "subsetdag/experiments.hpp"
