#pragma once

#include "qmod/coeff.hpp"
#include "qmod/errors.hpp"
#include "qmod/ncalg.hpp"
#include "qmod/rep.hpp"
#include "qmod/modular.hpp"
#include "qmod/ktheory.hpp"
#include "qmod/report.hpp"
#include "qmod/cli.hpp"
