#pragma once

#include "airy/errors.hpp"
#include "airy/rational.hpp"
#include "airy/polynomial.hpp"
#include "airy/matrix.hpp"
#include "airy/series.hpp"
#include "airy/connection.hpp"
#include "airy/moments.hpp"
#include "airy/asymptotics.hpp"
#include "airy/hodge.hpp"
