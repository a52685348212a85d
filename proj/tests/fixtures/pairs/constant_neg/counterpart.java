retry(3, true);
