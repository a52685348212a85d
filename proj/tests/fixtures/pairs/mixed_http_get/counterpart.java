try {
  URL url = new URL(address);
  HttpURLConnection conn = (HttpURLConnection) url.openConnection();
  conn.setRequestMethod("POST");
  conn.setConnectTimeout(TIMEOUT);
  InputStream in = conn.getInputStream();
  return read(in);
} catch (IOException e) {
  Log.e(TAG, "request failed", e);
}
return null;
