long total = 0L;
add(total);
