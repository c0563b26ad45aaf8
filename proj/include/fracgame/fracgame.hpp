#pragma once

#include "centripetality.hpp"
#include "coalition.hpp"
#include "errors.hpp"
#include "game.hpp"
#include "linfeas.hpp"
#include "partition.hpp"
#include "random.hpp"
#include "risk.hpp"
#include "scalar.hpp"
#include "stability.hpp"
