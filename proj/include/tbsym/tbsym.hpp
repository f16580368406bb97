#pragma once

#include "tbsym/rational.hpp"
#include "tbsym/polynomial.hpp"
#include "tbsym/matrix.hpp"
#include "tbsym/boardman.hpp"
#include "tbsym/germs.hpp"
#include "tbsym/io.hpp"
#include "tbsym/harness.hpp"
