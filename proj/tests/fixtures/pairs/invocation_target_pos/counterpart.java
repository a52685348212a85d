OperatingSystemMXBean bean = ManagementFactory.getOperatingSystemMXBean();
double load = bean.getSystemLoadAverage();
