#pragma once

#include "rmiso/analysis.hpp"
#include "rmiso/classgroup.hpp"
#include "rmiso/deligne.hpp"
#include "rmiso/ideals.hpp"
#include "rmiso/isocount.hpp"
#include "rmiso/localdata.hpp"
#include "rmiso/oracle.hpp"
#include "rmiso/orders.hpp"
#include "rmiso/rn.hpp"
#include "rmiso/weil.hpp"
