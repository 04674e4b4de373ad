#pragma once

#include "gmd/distance.hpp"
#include "gmd/error.hpp"
#include "gmd/experiments.hpp"
#include "gmd/geometry.hpp"
#include "gmd/ggd.hpp"
#include "gmd/ground_cost.hpp"
#include "gmd/io.hpp"
#include "gmd/matrix.hpp"
#include "gmd/planarize.hpp"
#include "gmd/segment.hpp"
#include "gmd/transport.hpp"
