#pragma once

#include "ruelle/algebra.hpp"
#include "ruelle/error.hpp"
#include "ruelle/ff_model.hpp"
#include "ruelle/gibbs.hpp"
#include "ruelle/measure.hpp"
#include "ruelle/shift_space.hpp"
#include "ruelle/transfer.hpp"
