#pragma once

#include "combi.hpp"
#include "cubillage.hpp"
#include "dag.hpp"
#include "fragmentation.hpp"
#include "geometry.hpp"
#include "io.hpp"
#include "report.hpp"
#include "separation.hpp"
#include "subset.hpp"
#include "svg.hpp"
#include "tiling.hpp"
#include "wextend.hpp"
