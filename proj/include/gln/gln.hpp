#pragma once

#include <gln/analytic.hpp>
#include <gln/bruhat.hpp>
#include <gln/cyclotomic.hpp>
#include <gln/exactmat.hpp>
#include <gln/gamma.hpp>
#include <gln/hecke.hpp>
#include <gln/kloosterman.hpp>
#include <gln/matrix.hpp>
#include <gln/rational.hpp>
#include <gln/weyl.hpp>
