retry(3);
