#pragma once

#include "matbreak/bench.hpp"
#include "matbreak/crt.hpp"
#include "matbreak/error.hpp"
#include "matbreak/inverse.hpp"
#include "matbreak/kex_attack.hpp"
#include "matbreak/kex_protocol.hpp"
#include "matbreak/linear_solve.hpp"
#include "matbreak/matrix.hpp"
#include "matbreak/modular.hpp"
#include "matbreak/pke_attack.hpp"
#include "matbreak/pke_patent.hpp"
#include "matbreak/polynomial.hpp"
#include "matbreak/random.hpp"
#include "matbreak/text_io.hpp"
#include "matbreak/worked_examples.hpp"
