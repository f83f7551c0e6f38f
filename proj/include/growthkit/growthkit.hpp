#pragma once

#include "growthkit/convolution.hpp"
#include "growthkit/covering.hpp"
#include "growthkit/element_set.hpp"
#include "growthkit/errors.hpp"
#include "growthkit/group.hpp"
#include "growthkit/inequalities.hpp"
#include "growthkit/pipeline.hpp"
#include "growthkit/rational.hpp"
#include "growthkit/sampling.hpp"
#include "growthkit/serialize.hpp"
#include "growthkit/structure.hpp"
