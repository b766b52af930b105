#pragma once

#include "sectorlink/coverage.hpp"
#include "sectorlink/exact.hpp"
#include "sectorlink/generators.hpp"
#include "sectorlink/geometry.hpp"
#include "sectorlink/graph.hpp"
#include "sectorlink/io.hpp"
#include "sectorlink/orientation4.hpp"
#include "sectorlink/power.hpp"
#include "sectorlink/random.hpp"
#include "sectorlink/replacement.hpp"
#include "sectorlink/scg.hpp"
#include "sectorlink/svg.hpp"
