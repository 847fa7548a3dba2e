#pragma once

#include "qpbasis/census.hpp"
#include "qpbasis/characters.hpp"
#include "qpbasis/common.hpp"
#include "qpbasis/config_enum.hpp"
#include "qpbasis/json_io.hpp"
#include "qpbasis/monomial.hpp"
#include "qpbasis/parallel.hpp"
#include "qpbasis/quad_form.hpp"
#include "qpbasis/root_system.hpp"
#include "qpbasis/series.hpp"
#include "qpbasis/verify.hpp"
#include "qpbasis/weight_spec.hpp"
