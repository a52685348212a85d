String json = loadJSONFromAsset("data.json");
JSONObject obj = new JSONObject(json);
JSONArray items = obj.getJSONArray("items");
for (int i = 0; i < items.length(); i++) {
  names.add(items.getString(i));
}
