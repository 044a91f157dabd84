#pragma once

#include "ieal/attack_report.hpp"
#include "ieal/attacks/brute_force.hpp"
#include "ieal/attacks/cpa.hpp"
#include "ieal/attacks/cycle.hpp"
#include "ieal/attacks/kpa.hpp"
#include "ieal/attacks/timing.hpp"
#include "ieal/oracle.hpp"
