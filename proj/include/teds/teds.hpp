#pragma once

#include "teds/types.hpp"
#include "teds/trust_engine.hpp"
#include "teds/watchdog.hpp"
#include "teds/packets.hpp"
#include "teds/simnet.hpp"
#include "teds/routing.hpp"
#include "teds/simulation.hpp"
#include "teds/experiments.hpp"
