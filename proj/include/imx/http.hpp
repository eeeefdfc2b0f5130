#pragma once

#include <httplib.h>

#include "imx/service.hpp"

namespace imx {

/// Registers the session endpoints of `service` on `server`. The service must
/// outlive the server.
void mount(Service& service, httplib::Server& server);

}  // namespace imx
