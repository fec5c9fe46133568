#pragma once

#include "piflat/flatness.hpp"
#include "piflat/format.hpp"
#include "piflat/laurent.hpp"
#include "piflat/signal.hpp"
#include "piflat/sysio.hpp"
