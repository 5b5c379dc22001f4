#pragma once

#include <heis/dimensions.hpp>
#include <heis/errors.hpp>
#include <heis/fs_operator.hpp>
#include <heis/gauss.hpp>
#include <heis/group.hpp>
#include <heis/hermite.hpp>
#include <heis/lattice.hpp>
#include <heis/parallel.hpp>
#include <heis/pullback.hpp>
#include <heis/quotient_spectrum.hpp>
#include <heis/spectrum.hpp>
#include <heis/weil_brezin.hpp>
#include <heis/weyl.hpp>
