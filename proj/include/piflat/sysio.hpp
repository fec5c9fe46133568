#pragma once

#include "piflat/cert_io.hpp"
#include "piflat/parse.hpp"
#include "piflat/plan.hpp"
