#pragma once

#include "dmc/core.hpp"
#include "dmc/bodies.hpp"
#include "dmc/body_ops.hpp"
#include "dmc/measures.hpp"
#include "dmc/grid.hpp"
#include "dmc/transforms.hpp"
#include "dmc/nnls.hpp"
#include "dmc/universality.hpp"
#include "dmc/stable.hpp"
