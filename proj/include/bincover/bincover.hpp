#pragma once

#include "bincover/codec.hpp"
#include "bincover/errors.hpp"
#include "bincover/generators.hpp"
#include "bincover/harness.hpp"
#include "bincover/model.hpp"
#include "bincover/opt.hpp"
#include "bincover/oracle.hpp"
#include "bincover/rational.hpp"
#include "bincover/strategies.hpp"
