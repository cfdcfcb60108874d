#pragma once

#include "mirrorgen/errors.hpp"
#include "mirrorgen/rational.hpp"
#include "mirrorgen/algebra.hpp"
#include "mirrorgen/series.hpp"
#include "mirrorgen/laurent.hpp"
#include "mirrorgen/relative.hpp"
#include "mirrorgen/xlaurent.hpp"
#include "mirrorgen/geometry.hpp"
#include "mirrorgen/pipeline.hpp"
#include "mirrorgen/periods.hpp"
#include "mirrorgen/identities.hpp"
