#pragma once

#include "mzeta/cyclotomic.hpp"
#include "mzeta/laurent.hpp"
#include "mzeta/padic.hpp"
