final int retries = 3;
connect(retries);
